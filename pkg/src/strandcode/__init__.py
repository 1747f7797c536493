"""Multi-strand codes whose strand multiset is recovered from its substring profile."""
from .constructions import (
    CodewordA,
    CodewordB,
    decode_A,
    decode_B,
    derive_params,
    derive_params_A,
    derive_params_B,
    encode_A,
    encode_B,
)
from .core import CodeParams, StrandMultiset, concat, index_expansion, lmers, multiset_equal, strand
from .errors import StrandCodeError
from .repeat_free import RfParams, rf_decode, rf_encode, rf_params
from .spectrum import Profile, is_repeat_free, profile, stitch, unique_count

__version__ = "0.1.0"
