from latinbox.utils.RunLogger import RunLogger
from latinbox.utils.rng import Seed, make_rng, derive_seed
from latinbox.utils.utils import *
