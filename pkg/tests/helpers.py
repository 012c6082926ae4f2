import numpy as np

from entsec.states import PureState


def random_state(rng, dims=(2, 2, 2)) -> PureState:
    n = int(np.prod(dims))
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return PureState(dims, v / np.linalg.norm(v))
