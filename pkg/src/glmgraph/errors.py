"""Exception hierarchy shared by all modules."""


class GLMError(Exception):
    """Base class for every error raised by glmgraph."""


# exact linear algebra
class RankError(GLMError):
    pass


class DimError(GLMError):
    pass


class SingularError(GLMError):
    pass


class ContainmentError(GLMError):
    pass


# graph of groups
class ParseError(GLMError):
    """Malformed input document.  ``where`` names the line or field."""

    def __init__(self, message, where=None):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)


class ValidationError(GLMError):
    def __init__(self, message, where=None):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)


class CollapseError(GLMError):
    pass


class CapExceeded(GLMError):
    def __init__(self, message, partial_count):
        self.partial_count = partial_count
        super().__init__(f"{message} (partial count {partial_count})")


# affine representation
class UnknownGenerator(GLMError):
    pass


# matrix groups
class NotAGroup(GLMError):
    pass


# pipeline
class InternalInconsistency(GLMError):
    """A report invariant failed.  This is always a bug."""


class NotApplicable(GLMError):
    pass
