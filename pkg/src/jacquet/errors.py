class PreconditionError(ValueError):
    """An operation was called outside its domain (bad Levi size, mismatched totals, ...)."""
