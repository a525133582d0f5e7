baseDir = "~/.curvelab"

logFilePath = None
logLevel = "INFO"

# Relative tolerances for analytic identities and one-derivative inequalities
identityTolerance = 1e-8
inequalityTolerance = 1e-6

# Radius grids: samples per run and the fraction of the admissible radius
# a default grid may reach
radiusGridSize = 512
radiusGridFraction = 0.9

# Radial ODE integration (DOP853)
odeRelTol = 1e-12
odeAbsTol = 1e-14
frobeniusTerms = 6

# Sphere rules get this many Gauss points beyond the exactness requirement
quadraturePadding = 4

# Sup-norm sampling: samples per unit arc and the local refinement factor
supNormDensity = 48
supNormRefinement = 8

# Nodal tracing: grid cells per great circle per unit degree
nodalResolutionFactor = 16

# Constant fits are called stable when they agree within these factors
growthStabilityFactor = 4.0
dfStabilityFactor = 2.0
sandwichSpreadBound = 1e3

# Worker threads (CURVELAB_THREADS overrides)
threads = 4
