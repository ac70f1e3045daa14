"""Exception hierarchy shared by all modules."""


class SpeechAugError(Exception):
    """Base class for every error raised by this package."""


# audio I/O
class MalformedWav(SpeechAugError):
    pass


class UnsupportedFormat(SpeechAugError):
    pass


class EmptyBuffer(SpeechAugError, ValueError):
    pass


# dsp
class DspError(SpeechAugError, ValueError):
    pass


class FactorOutOfRange(DspError):
    pass


class CentsOutOfRange(DspError):
    pass


class GainOutOfRange(DspError):
    pass


class ConfigOutOfRange(DspError):
    pass


class WindowLongerThanSignal(DspError):
    pass


# features
class RateMismatch(SpeechAugError, ValueError):
    pass


class TooShort(SpeechAugError, ValueError):
    pass


class ConfigShapeMismatch(SpeechAugError, ValueError):
    pass


class MalformedFeatureFile(SpeechAugError):
    pass


# corpus
class TooManySpeakers(SpeechAugError, ValueError):
    pass


class UnknownSourceSet(SpeechAugError, KeyError):
    pass


class DuplicateOutputId(SpeechAugError, ValueError):
    pass


class InvalidRecipe(SpeechAugError, ValueError):
    pass


class MalformedScpLine(SpeechAugError, ValueError):
    pass


class MissingFile(SpeechAugError, FileNotFoundError):
    pass


class MalformedManifest(SpeechAugError, ValueError):
    pass


# scoring
class EmptyReference(SpeechAugError, ValueError):
    pass


class UnmatchedUtterances(SpeechAugError, ValueError):
    def __init__(self, missing_in_hyp, missing_in_ref):
        self.missing_in_hyp = sorted(missing_in_hyp)
        self.missing_in_ref = sorted(missing_in_ref)
        super().__init__(
            f"{len(self.missing_in_hyp)} reference ids without hypothesis, "
            f"{len(self.missing_in_ref)} hypothesis ids without reference"
        )
