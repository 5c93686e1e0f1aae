"""Exception hierarchy shared by all modules."""


class MwgbError(Exception):
    """Base class for every error raised by this package."""


class NotDivisible(MwgbError, ArithmeticError):
    pass


class ZeroPolynomial(MwgbError, ValueError):
    pass


class DimensionMismatch(MwgbError, ValueError):
    pass


class ValidationError(MwgbError, ValueError):
    """An input violates a documented invariant."""


class RankDeficient(ValidationError):
    pass


class UnboundedEnumeration(MwgbError, ValueError):
    pass


class NonPositiveW1(UnboundedEnumeration):
    """The first weight row has a non-positive entry."""


class MalformedStep(MwgbError, ValueError):
    pass


class InhomogeneousInput(MwgbError, ValueError):
    pass


class NegativeWeight(MwgbError, ValueError):
    pass


class NotInImage(MwgbError, ValueError):
    pass


class EmptyDegree(MwgbError, ValueError):
    pass


class ParseError(MwgbError, ValueError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class VerifyMismatch(MwgbError):
    def __init__(self, missing, extra):
        self.missing = sorted(missing)
        self.extra = sorted(extra)
        super().__init__(
            f"leading monomials differ: missing={self.missing} extra={self.extra}"
        )
