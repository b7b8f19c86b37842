DEFAULT_SEGMENT_SIZE = 1 << 18
DEFAULT_MAX_MEMORY = 1 << 30
DEFAULT_ORACLE_CAP = 50_000
DEFAULT_WITNESS_CAP = 10_000_000
DEFAULT_EXACT_CAP = 1_000_000
SUPPORTED_N_MAX = 1_000_000_000

# Candidatos q examinados por primo na cauda abaixo de sqrt(n).
SMOOTH_PROBE_LIMIT = 4096

# Faixa relativa em que a comparacao em ponto flutuante nao e confiavel.
FLOAT_GUARD = 2.0 ** -40
MPMATH_DPS = 60

WINDOW_LOW = 2.0
WINDOW_HIGH = 2.0 * 2.0 ** 0.5
RATIO_BAND = (1.5, 3.5)

COMMAND_EXACT = "exact"
COMMAND_GREEDY = "greedy"
COMMAND_ADAPTIVE = "adaptive"
COMMAND_BOUNDS = "bounds"
COMMAND_SCAN = "scan"
COMMAND_PRIMESUM = "primesum"
COMMAND_PI = "pi"
COMMAND_VALIDATE = "validate"
COMMAND_SUMCHECK = "sumcheck"
COMMAND_LPFDUMP = "lpfdump"
COMMANDS = (
    COMMAND_EXACT,
    COMMAND_GREEDY,
    COMMAND_ADAPTIVE,
    COMMAND_BOUNDS,
    COMMAND_SCAN,
    COMMAND_PRIMESUM,
    COMMAND_PI,
    COMMAND_VALIDATE,
    COMMAND_SUMCHECK,
    COMMAND_LPFDUMP,
)

FORMAT_CSV = "csv"
FORMAT_JSON = "json"
FORMAT_HUMAN = "human"
FORMAT_XLSX = "xlsx"
FORMATS = (FORMAT_CSV, FORMAT_JSON, FORMAT_HUMAN, FORMAT_XLSX)

EXIT_OK = 0
EXIT_INVALID_CHAIN = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3
EXIT_FAILURE = 4

LPF_COLUMNS = ["m", "lpf"]
CHAIN_COLUMNS = ["i", "a", "p"]
TRACE_COLUMNS = ["i", "a", "p", "q", "partial_sum", "overshoot_flag"]
G_COLUMNS = ["n", "g"]
BOUNDS_COLUMNS = ["n", "g_exact", "lower_len", "upper", "ratio", "sqrt_n_over_log_n"]
EXPANSION_COLUMNS = ["x", "exact_sum", "term1", "term2", "abs_err", "rel_err", "err_norm"]
PI_COLUMNS = ["x", "pi_exact", "estimate", "residual_norm"]
SUMCHECK_COLUMNS = ["n", "x", "prime_sum", "holds", "margin"]

# Cada item e uma tupla de alternativas: basta uma estar presente.
REQUIRED_FLAGS = {
    COMMAND_EXACT: [("n",)],
    COMMAND_GREEDY: [("n",)],
    COMMAND_ADAPTIVE: [("n",)],
    COMMAND_BOUNDS: [("n",)],
    COMMAND_SCAN: [("range",)],
    COMMAND_PRIMESUM: [("x", "range")],
    COMMAND_PI: [("x", "range")],
    COMMAND_VALIDATE: [("file",), ("n",)],
    COMMAND_SUMCHECK: [("n", "range")],
    COMMAND_LPFDUMP: [("n",)],
}

FLAG_LABELS = {
    "n": "--n",
    "x": "--x",
    "range": "--range",
    "file": "--file",
    "segment_size": "--segment-size",
    "exact_cap": "--exact-cap",
    "threads": "--threads",
    "start_bound": "--start-bound",
    "bounds_sweep": "--bounds-sweep",
    "out": "--out",
    "format": "--format",
}
