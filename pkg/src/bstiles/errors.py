class InconclusiveError(RuntimeError):
    """A bounded search or enumeration hit its caps before reaching a verdict."""
