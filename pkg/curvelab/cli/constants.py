from curvelab.common import fields

# `key = value` line of an experiment config; everything after '#' is a
# comment and lists are comma separated
CONFIG_LINE_REG_EX = r"^\s* (?P<key>[a-z][a-z0-9_]*) \s*=\s* " \
                     r"(?P<value>[^#]*?) \s* (\#.*)?$"
BLANK_LINE_REG_EX = r"^\s* (\#.*)?$"
LIST_SEPARATOR = ","

EXIT_OK = 0
EXIT_MARGIN = 1
EXIT_CONFIG = 2
EXIT_SOLVER = 3

SUITE_KEY = "suite"
N_KEY = "n"
CURVATURES_KEY = "curvatures"
LMIN_KEY = "lmin"
LMAX_KEY = "lmax"
RMIN_KEY = "rmin"
RMAX_KEY = "rmax"
RCOUNT_KEY = "rcount"
R0_KEY = "r0"
SEED_KEY = "seed"
TOL_KEY = "tol"
FIELDS_KEY = "fields"
DENSITY_KEY = "density"
OUT_KEY = "out"

CONFIG_KEYS = (SUITE_KEY, N_KEY, CURVATURES_KEY, LMIN_KEY, LMAX_KEY,
               RMIN_KEY, RMAX_KEY, RCOUNT_KEY, R0_KEY, SEED_KEY, TOL_KEY,
               FIELDS_KEY, DENSITY_KEY, OUT_KEY)

INT_KEYS = (N_KEY, LMIN_KEY, LMAX_KEY, RCOUNT_KEY, SEED_KEY, FIELDS_KEY)
FLOAT_KEYS = (RMIN_KEY, RMAX_KEY, R0_KEY, TOL_KEY, DENSITY_KEY)

# Values a suite uses for keys the config leaves out; None means the
# radius follows from the model space
SUITE_DEFAULTS = {
    fields.CONVEXITY: {N_KEY: 2, CURVATURES_KEY: (0.0,), LMIN_KEY: 0,
                       LMAX_KEY: 6, RMIN_KEY: 0.05, RMAX_KEY: None,
                       RCOUNT_KEY: 64, FIELDS_KEY: 4},
    fields.DOUBLING_SUITE: {N_KEY: 2, CURVATURES_KEY: (1.0,), LMIN_KEY: 0,
                            LMAX_KEY: 6, FIELDS_KEY: 50},
    fields.SANDWICH: {LMIN_KEY: 0, LMAX_KEY: 20, RMIN_KEY: 0.05,
                      RMAX_KEY: 0.5, RCOUNT_KEY: 6},
    fields.GROWTH: {LMIN_KEY: 2, LMAX_KEY: 16, R0_KEY: 0.1},
    fields.CHAIN: {LMIN_KEY: 2, LMAX_KEY: 12, R0_KEY: 0.4},
    fields.DF: {LMIN_KEY: 1, LMAX_KEY: 20, R0_KEY: 0.2},
    fields.NODAL: {LMIN_KEY: 4, LMAX_KEY: 24},
    fields.LEMMA54: {RCOUNT_KEY: 10000},
}

# Degrees of the closed-form sectoral nodal family
SECTORAL_DEGREES = (1, 2, 4, 8, 16)
SECTORAL_TOLERANCE = 0.01
# Accepted distance of the random nodal slope from 1
NODAL_SLOPE_TOLERANCE = 0.15

# Comparison brackets checked besides the exact one
SLACK_WIDTH = 0.5

SANDWICH_ALPHA = 0.5
SANDWICH_EPS = 0.1

# Right end of the grid for the x coth^2 parts of the lemma
LEMMA54_XMAX = 25.0
# Point near 0 where the derivatives are compared with their limits
LEMMA54_NEAR_ZERO = 1e-6
LEMMA54_LIMIT_TOLERANCE = 1e-6

DEFAULT_OUT = "curvelab-reports"

USAGE_TEXT = '''
Usage:
  curvelab run --config <file> [--plots] [--out <dir>]
  curvelab summary <dir>

Suites: {}
Exit status: 0 all margins hold, 1 a margin is violated,
             2 bad config or empty report directory, 3 solver failure
'''.format(", ".join(fields.SUITES))
