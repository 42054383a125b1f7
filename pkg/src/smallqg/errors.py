"""Exception hierarchy shared by all modules.

Admissibility errors mean the user-supplied input violates a defining
condition; internal errors mean a self-check failed.
"""

from __future__ import annotations


class QGError(Exception):
    """Base class for every error raised by the package."""


class AdmissibilityError(QGError):
    """Input data violate a defining condition (CLI exit code 2)."""


class InternalCheckError(QGError):
    """A built-in consistency check failed (CLI exit code 1)."""


# scalars
class ZeroInput(QGError):
    pass


class ContextMismatch(QGError):
    pass


# groups
class GroupMismatch(QGError):
    pass


# roots
class NotGeneralizedCartan(AdmissibilityError):
    pass


class NotFiniteType(AdmissibilityError):
    pass


class NotStandardForm(AdmissibilityError):
    pass


class OrderViolation(AdmissibilityError):
    pass


class Inconsistent(AdmissibilityError):
    pass


# datum
class CartanConditionFailed(AdmissibilityError):
    def __init__(self, i: int, j: int, msg: str = ""):
        self.i, self.j = i, j
        super().__init__(msg or f"Cartan condition fails at ({i + 1},{j + 1})")


class UnitDiagonal(AdmissibilityError):
    def __init__(self, i: int):
        self.i = i
        super().__init__(f"q_{i + 1}{i + 1} = 1")


class EvenOrder(AdmissibilityError):
    def __init__(self, i: int, order: int):
        self.i, self.order = i, order
        super().__init__(f"q_{i + 1}{i + 1} has even order {order}")


class G2OrderDivisibleBy3(AdmissibilityError):
    def __init__(self, i: int, order: int):
        self.i, self.order = i, order
        super().__init__(f"q_{i + 1}{i + 1} has order {order} divisible by 3 on a G2 component")


class IllegalLinking(AdmissibilityError):
    def __init__(self, i: int, j: int, clause: str):
        self.i, self.j, self.clause = i, j, clause
        super().__init__(f"lambda_{i + 1},{j + 1} must vanish: {clause}")


class IllegalMu(AdmissibilityError):
    def __init__(self, root: tuple, clause: str):
        self.root, self.clause = root, clause
        super().__init__(f"mu at root {root} must vanish: {clause}")


# braided
class AmbientMismatch(QGError):
    pass


class BraidingMismatch(AdmissibilityError):
    pass


class NoDecomposition(InternalCheckError):
    pass


# quotients
class DegreeCapExceeded(QGError):
    def __init__(self, cap: int, degree=None):
        self.cap, self.degree = cap, degree
        where = f" at degree {degree}" if degree is not None else ""
        super().__init__(f"degree cap {cap} exceeded{where}")


class PBWFailure(InternalCheckError):
    pass


# kalgebra
class NotInK(InternalCheckError):
    pass


class ConsistencyFailure(InternalCheckError):
    pass


# uqgroup
class CentralityFailure(AdmissibilityError):
    pass


# isomorphy
class ZeroConstant(QGError):
    pass


class RankMismatch(QGError):
    pass


class OrderHypothesisViolated(AdmissibilityError):
    pass
