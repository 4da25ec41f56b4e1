"""cubiccf: dual-engine verification of theta-function and cubic continued
fraction identities.

Two engines:

* an exact truncated-series engine (`qseries`) that proves identities
  coefficient-by-coefficient in q with rational arithmetic, and
* an arbitrary-precision numeric engine (`numkern`, `specfun`, `quadrature`,
  `closedform`) that certifies transformation formulas, reciprocity products,
  integral representations and explicit closed-form values.

The `registry` package holds the identity corpus (a small text DSL) and the
verification dispatcher; `cli` exposes everything on the command line.
"""

from .numkern import BigReal, agm, const_pi, gamma_three_quarters
from .qseries import QSeries
from .specfun import theta_num, V_cf_num, V_theta_num
from .quadrature import integrate, rhs_2_1, rhs_2_2
from .closedform import eval_closedform
from .registry import (
    IdentityRecord,
    VerificationReport,
    builtin_corpus,
    parse_corpus,
    verify_numeric,
    verify_series,
)

__version__ = "0.1.0"

__all__ = [
    "BigReal",
    "QSeries",
    "IdentityRecord",
    "VerificationReport",
    "agm",
    "builtin_corpus",
    "const_pi",
    "eval_closedform",
    "gamma_three_quarters",
    "integrate",
    "parse_corpus",
    "rhs_2_1",
    "rhs_2_2",
    "theta_num",
    "V_cf_num",
    "V_theta_num",
    "verify_numeric",
    "verify_series",
]
