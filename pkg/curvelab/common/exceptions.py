class CurvelabError(Exception):
    reason = 'Numerical verification failed'


class DomainError(CurvelabError, ValueError):
    reason = 'Argument lies outside the admissible range'


class BracketError(DomainError):
    reason = 'Model curvature is not bracketed by the comparison pair'


class ResolutionError(DomainError):
    reason = 'Grid is too coarse for the requested degree'


class SolverError(CurvelabError):
    reason = 'Radial ODE integration failed'


class MissingProfileError(CurvelabError, KeyError):
    reason = 'No radial profile for a degree present in the field'


class ChainError(CurvelabError):
    reason = 'Could not connect the target with a chain of balls'


class InsufficientRangeError(CurvelabError):
    reason = 'Regression needs at least two distinct degrees'


class ConfigError(CurvelabError):
    reason = 'Invalid experiment configuration'


class ReportError(CurvelabError):
    reason = 'No reports found'
