"""Exception types shared across the toolkit."""


class DocCheckError(Exception):
    """Base class for all toolkit errors."""


class UnparsableFile(DocCheckError):
    """A source file could not be fully parsed; partial records may exist."""

    def __init__(self, message: str, records=None, diagnostics=None):
        super().__init__(message)
        self.records = records or []
        self.diagnostics = diagnostics or []


class IoError(DocCheckError):
    """A file could not be read while scanning a tree."""


class DegenerateRecord(DocCheckError):
    """An edit record whose pre-edit comment normalizes to nothing."""


class BatchTooSmall(DocCheckError):
    """Contrastive operations need at least two elements."""


class EmptyDataset(DocCheckError):
    """No examples to split."""


class CorpusEmpty(DocCheckError):
    """Tokenizer training requires at least one non-empty document."""


class UnknownId(DocCheckError):
    """Token id outside the trained vocabulary."""


class SequenceTooLong(DocCheckError):
    """Token sequence exceeds the model's positional capacity."""


class AllPositionsMasked(DocCheckError):
    """A generation loss was asked to average over zero positions."""


class NonFiniteLoss(DocCheckError):
    """Training produced NaN or infinity."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class EmptyGeneration(DocCheckError):
    """The decoder emitted EOS immediately; no text was produced."""


class LengthMismatch(DocCheckError):
    """Predictions and labels differ in length."""


class EmptyReference(DocCheckError):
    """BLEU reference must contain at least one token."""


class EmptyInput(DocCheckError):
    """Corpus-level metric invoked with no sentence pairs."""


class SingleClassTrain(DocCheckError):
    """Baseline training split must contain both labels."""
