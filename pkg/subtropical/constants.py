from fractions import Fraction

ORTHANT_ALL = "all"
ORTHANT_POSITIVE = "positive"
ORTHANT_CHOICES = (ORTHANT_ALL, ORTHANT_POSITIVE)

STRATEGY_DPLL = "dpll"
STRATEGY_ENUMERATE = "enumerate"
STRATEGY_CHOICES = (STRATEGY_DPLL, STRATEGY_ENUMERATE)

VERDICT_SAT = "sat"
VERDICT_UNSAT = "unsat"
VERDICT_UNKNOWN = "unknown"

DEFAULT_MAX_SQUARINGS = 32
DEFAULT_ROOT_WIDTH = Fraction(1, 2 ** 20)

REASON_NO_CLUSTER = "no positive vertex cluster"
REASON_TIMEOUT = "timeout"
REASON_INTERNAL_LIMIT = "internal-limit"
