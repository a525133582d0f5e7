# Keys of the JSON report envelope
SUITE = "suite"
SEED = "seed"
PARAMS = "params"
CASES = "cases"
WORST_MARGIN = "worst_margin"
PASSED = "passed"

RADII = "r"
Q = "q"
Q_NORMALIZED = "Q"
DLOGQ = "dlogq"
D2LOGQ = "d2logq"
RESIDUAL_I = "residual_i"
RESIDUAL_II = "residual_ii"
RESIDUAL_II_TILDE = "residual_ii_tilde"
DOUBLING = "doubling_margins"

# Columns of the growth sweep CSV
SWEEP_COLUMNS = ("base", "l", "lambda", "r", "s", "lhs", "rhs", "margin",
                 "fitted_C1", "fitted_C2")

# Columns of the nodal CSV
NODAL_COLUMNS = ("l", "lambda", "length", "length_over_sqrt_lambda")

# Columns of the summary table
SUMMARY_COLUMNS = ("name", "seed", "cases", "worst_margin", "pass")

# Experiment suites
CONVEXITY = "convexity"
DOUBLING_SUITE = "doubling"
SANDWICH = "sandwich"
GROWTH = "growth"
CHAIN = "chain"
DF = "df"
NODAL = "nodal"
LEMMA54 = "lemma54"

SUITES = (CONVEXITY, DOUBLING_SUITE, SANDWICH, GROWTH, CHAIN, DF, NODAL,
          LEMMA54)

# Columns of the DF sample CSV
DF_COLUMNS = ("base", "l", "lambda", "r", "ratio", "value")

# Columns of the x cot^2 lemma CSV
LEMMA54_COLUMNS = ("part", "x", "derivative", "lower_margin",
                   "upper_margin")
