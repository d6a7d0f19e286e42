"""Exception hierarchy shared by every stage of the pipeline."""


class DocClusterError(Exception):
    """Base class for fatal pipeline errors (CLI exit code 1)."""


class CorpusError(DocClusterError):
    pass


class RuleFileError(DocClusterError):
    pass


class VocabularyError(DocClusterError):
    pass


class ContractViolation(DocClusterError, ValueError):
    """An operation was called outside its documented preconditions."""


class ZeroVectorError(ContractViolation):
    pass


class ClusteringError(DocClusterError):
    pass


class ReportError(DocClusterError):
    pass
