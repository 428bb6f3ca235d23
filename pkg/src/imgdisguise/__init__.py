"""Image disguise with a WGAN-trained generator.

A generator network is trained so that one innocuous disguise image maps to a
private original. The serialized generator (the keyfile) plus the disguise
image are all the receiver needs to rebuild the original.
"""
from .datasets import load_standard
from .emd import emd_exact, wasserstein_1d
from .errors import (DisguiseError, KeyCorruptionError, KeyfileError, KeyFormatError,
                     KeyVersionError, PgmError, ShapeError)
from .image_io import (Image, downscale_box, from_vector, load_pgm, read_pgm, save_pgm,
                       to_vector, write_pgm)
from .keyfile import load_key, save_key
from .metrics import Fidelity, fidelity, mse, psnr
from .mlp import Activation, MlpParams, backward, forward, gradient_check, init_mlp
from .wgan import (RmsPropState, TrainConfig, TrainHistory, clip_critic, critic_loss,
                   generator_loss, reveal, rmsprop_step, train_pair)

__version__ = "0.1.0"
