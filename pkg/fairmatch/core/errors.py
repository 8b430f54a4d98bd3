"""
Jerarquia de errores.

Toda falla sobre la que quien llama puede actuar es un FairMatchError. El
CLI convierte exit_code en el status del proceso y la API convierte
http_status en un HTTPException; nadie mas mira la clase.
"""


class FairMatchError(Exception):
    exit_code: int = 1
    http_status: int = 422

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


# ---- exit 1: entrada invalida ----

class GraphValidationError(FairMatchError):
    """Malformed graph document or inconsistent graph."""


class InvalidParameterError(FairMatchError):
    """Argument outside the operation's domain."""


class RationalOverflowError(FairMatchError):
    """A rational needs more bits than RATIONAL_BITS."""


# ---- exit 2: infactible matematicamente ----

class InfeasibleRequestError(FairMatchError):
    exit_code = 2
    http_status = 409


class NotRealizableError(InfeasibleRequestError):
    """Point lies outside co(M)."""


class BoundNotApplicableError(InfeasibleRequestError):
    """Bound formula undefined for this instance."""


# ---- exit 3: limites ----

class GuardExceededError(FairMatchError):
    exit_code = 3
    http_status = 413
