"""Exception types raised across the package."""


class GradcohError(ValueError):
    pass


class NonHomogeneousInput(GradcohError):
    def __init__(self, what, detail=""):
        self.what = what
        super().__init__(f"not homogeneous: {what}" + (f" ({detail})" if detail else ""))


class NotZGraded(GradcohError):
    pass


class ZeroModule(GradcohError):
    pass


class NegativeIndex(GradcohError):
    pass


class CMRequired(GradcohError):
    pass


class ResolutionTooShort(GradcohError):
    pass


class NotFiniteLength(GradcohError):
    def __init__(self, witness):
        # witness: (generator position, variable index) along which M grows
        self.witness = witness
        super().__init__(f"module is not of finite length (grows along variable {witness[1]} "
                         f"from generator {witness[0]})")


class WindowExceedsTruncation(GradcohError):
    pass


class InputNotExact(GradcohError):
    pass


class ParseError(GradcohError):
    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        where = f"line {line}, col {col}: " if line is not None else ""
        super().__init__(where + message)
