"""Exception hierarchy shared by all modules."""


class F1RepError(ValueError):
    """Base class for all errors raised by f1rep."""


class StructuralError(F1RepError):
    """Input data is malformed: unresolved or duplicated identifiers."""


class WindingViolationError(F1RepError):
    """A winding was required but the data violates the winding conditions."""

    def __init__(self, report):
        self.report = report
        super().__init__("invalid winding:\n" + "\n".join(f"  {v}" for v in report.violations))


class F1LinearityError(F1RepError):
    """An arrow map of a representation table is not injective off its kernel."""


class BaseMismatchError(F1RepError):
    """Two windings over different base quivers were combined."""


class DecomposableError(F1RepError):
    """An operation defined only for indecomposable windings got a decomposable one."""

    def __init__(self, components):
        self.components = components
        listing = "; ".join("{" + ", ".join(c) + "}" for c in components)
        super().__init__(
            f"winding is decomposable ({len(components)} components): {listing}"
            if components
            else "winding is empty"
        )


class MorphismError(F1RepError):
    """A winding morphism is invalid or its image is disconnected."""


class ShapeError(F1RepError):
    """Matrix or block shapes do not match."""


class FieldError(F1RepError):
    """Unsupported or malformed scalar field descriptor."""


class StringError(F1RepError):
    """A string (signed word of arrows) is malformed or not composable."""


class InstanceFormatError(F1RepError):
    """An instance document could not be parsed."""
