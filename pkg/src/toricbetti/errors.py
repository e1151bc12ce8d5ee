"""Exception types shared across the package."""


class NegativeBetti(ArithmeticError):
    """A reconstructed Betti number came out negative."""

    def __init__(self, p, value, spec=None):
        self.p = p
        self.value = value
        self.spec = spec
        where = f" for {spec}" if spec is not None else ""
        super().__init__(f"negative Betti number k_{{{p},1}} = {value}{where}")


class ResourceLimit(RuntimeError):
    """A Koszul stratum would exceed the configured matrix-entry bound."""


class OracleInfeasible(ResourceLimit):
    """A reconciliation grid member is too large for the Koszul oracle."""


class DomainError(ValueError):
    pass


class InsufficientData(ValueError):
    pass
