# Export data models for easy imports

from .space import (
    SpaceKind,
    SpaceSpec,
    PolePoint,
    PoleEntry,
)

from .coefficients import (
    CoefficientMethod,
    CoefficientTable,
    IdentityCheck,
)

from .evaluation import (
    ComplexValue,
    EvalOptions,
    EvalFlag,
    EvalResult,
)

from .output import (
    RecordKind,
    OutputRecord,
)
