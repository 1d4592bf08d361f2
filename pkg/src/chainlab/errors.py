"""Exception taxonomy shared across the package."""


class ChainlabError(Exception):
    """Base class for all package errors."""


class ParseError(ChainlabError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", col {column}" if column is not None else "") + ")"
        super().__init__(message + where)


class AssociativityError(ChainlabError):
    def __init__(self, triple, message=None):
        self.triple = triple
        super().__init__(message or f"associativity fails on basis triple {triple}")


class UnitError(ChainlabError):
    pass


class NotAugmented(ChainlabError):
    pass


class IdealNotNilpotent(ChainlabError):
    pass


class NotAnIdeal(ChainlabError):
    pass


class NotNilpotent(ChainlabError):
    pass


class DegreeMismatch(ChainlabError):
    pass


class RangeNotCertified(ChainlabError):
    pass


class SizeLimit(ChainlabError):
    pass
