"""Exception hierarchy.

Everything under :class:`StellarError` is an input problem (CLI exit code 1);
:class:`InvariantViolation` means a computed object broke a property that must
hold by construction (CLI exit code 2, always a bug).
"""


class StellarError(ValueError):
    pass


class NotUniformError(StellarError):
    pass


class JoinError(StellarError):
    def __init__(self, label):
        super().__init__(f"complexes share vertex {label}")
        self.label = label


class NotAPseudoManifold(StellarError):
    def __init__(self, face, count):
        super().__init__(
            f"face {face} lies in {count} generators; not a pseudo-manifold"
        )
        self.face = face
        self.count = count


class MoveError(StellarError):
    """An illegal stellar move.  ``index`` is 1-based when raised from a script."""

    def __init__(self, message, index=None):
        if index is not None:
            message = f"move {index}: {message}"
        super().__init__(message)
        self.index = index


class WeldError(MoveError):
    pass


class StructureError(StellarError):
    pass


class ParseError(StellarError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class InvariantViolation(RuntimeError):
    pass
