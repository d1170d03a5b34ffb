"""Exception hierarchy shared by every dlmeta module."""


class DLError(Exception):
    """Base class for all dlmeta errors."""


class TheoryError(DLError):
    """A defeasible theory failed validation."""


class TheorySyntaxError(TheoryError):
    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)


class LogicError(DLError):
    """A logic definition (or one of its conditions) is malformed."""


class LogicSyntaxError(LogicError):
    def __init__(self, message, pos=None):
        self.message = message
        self.pos = pos
        where = f"offset {pos}: " if pos is not None else ""
        super().__init__(where + message)


class UnboundVariableError(LogicError):
    pass


class CyclicClosureDependency(LogicError):
    """No closure stratification exists; ``cycle`` lists tag names."""

    def __init__(self, cycle):
        self.cycle = tuple(cycle)
        super().__init__("closure dependency cycle: " + " -> ".join(self.cycle))


class NotWellDisciplined(DLError):
    def __init__(self, report, message=None):
        self.report = report
        super().__init__(message or "logic %r is not well-disciplined: %s"
                         % (report.logic, "; ".join(report.violations)))


class NotAConsequence(DLError):
    pass


class UnknownTagError(DLError, KeyError):
    def __str__(self):
        return Exception.__str__(self)
