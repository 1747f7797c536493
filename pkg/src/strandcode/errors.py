"""Exception hierarchy.

Every library error carries a stable ``exit_code`` so the command line can
map failures without a lookup table. Ranges: 10-19 spectrum, 20-29 codec,
30-39 parameters, 40+ I/O.
"""


class StrandCodeError(Exception):
    exit_code = 1


# -- spectrum ---------------------------------------------------------------

class SpectrumError(StrandCodeError):
    exit_code = 10


class WindowTooLong(SpectrumError):
    exit_code = 11


class AmbiguousSpectrum(SpectrumError):
    exit_code = 12


class MalformedSpectrum(SpectrumError):
    exit_code = 13


class IndexSetBroken(SpectrumError):
    exit_code = 14


# -- codecs -----------------------------------------------------------------

class CodecError(StrandCodeError):
    exit_code = 20


class MalformedCodeword(CodecError):
    exit_code = 21


class AlphabetTooSmall(CodecError):
    exit_code = 22


class NonTermination(CodecError):
    exit_code = 23


class WindowTooShort(CodecError):
    exit_code = 24


class EncodingFailure(CodecError):
    exit_code = 25


# -- parameters -------------------------------------------------------------

class ParameterError(StrandCodeError):
    exit_code = 30


class InfeasibleParams(ParameterError):
    exit_code = 31


class DivisibilityViolation(ParameterError):
    exit_code = 32


class WidthTooSmall(ParameterError):
    exit_code = 33


class ScaleTooLarge(ParameterError):
    exit_code = 34


class EmptySpace(ParameterError):
    exit_code = 35


class ParameterMismatch(ParameterError):
    exit_code = 36


# -- I/O --------------------------------------------------------------------

class FormatError(StrandCodeError):
    exit_code = 40
