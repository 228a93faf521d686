"""Exception hierarchy shared by all tilecert modules."""


class TilecertError(Exception):
    pass


class TpdbSyntaxError(TilecertError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class WidthMismatch(TilecertError):
    """Tiles of different widths were combined."""


class WidthUnsupported(TilecertError):
    """The requested tile width is not valid for the closure mode."""


class TileBudgetExceeded(TilecertError):
    def __init__(self, cap: int):
        super().__init__(f"tile budget of {cap} exceeded")
        self.cap = cap


class StepTimeout(TilecertError):
    """The wall-clock deadline passed while a step was running."""


class MissingReductPath(TilecertError):
    """Labelling found a redex whose reduct is not in the automaton."""


class NotStandard(TilecertError):
    """A transform for standard termination got weak rules."""


class Collapsing(TilecertError):
    """A rule has an empty right-hand side where that is not allowed."""


class StrategySyntaxError(TilecertError):
    pass
