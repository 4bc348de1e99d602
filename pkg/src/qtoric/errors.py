"""Exception hierarchy.  Every error raised on bad input derives from QtoricError."""


class QtoricError(Exception):
    pass


class PolytopeError(QtoricError):
    pass


class NotSimple(PolytopeError):
    pass


class Unbounded(PolytopeError):
    pass


class Redundant(PolytopeError):
    def __init__(self, facets):
        self.facets = tuple(facets)
        super().__init__(f"redundant half-spaces: {list(self.facets)}")


class Empty(PolytopeError):
    pass


class NotAVertex(PolytopeError):
    pass


class DegenerateCorner(PolytopeError):
    pass


class NotNormalForm(PolytopeError):
    pass


class NotInPolytope(PolytopeError):
    pass


class NotOnVariety(QtoricError):
    pass


class NotUnimodular(QtoricError):
    pass


class SignClash(QtoricError):
    pass


class DimensionTooLow(QtoricError):
    pass


class NoGeometry(QtoricError):
    pass


class BadParameters(QtoricError):
    pass


class TopDegreeNotRankOne(QtoricError):
    pass


class WrongDimension(QtoricError):
    pass


class ParseError(QtoricError):
    pass
