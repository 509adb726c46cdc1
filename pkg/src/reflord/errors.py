class ReflordError(ValueError):
    """Domain error: invalid input or a violated mathematical precondition."""
