from curvelab.quadrature.rules import SphereRule, sphereRule
from curvelab.quadrature.oracle import PointwiseField, ballIntegral, \
    qQuadrature, supNormBall, supNormProfile
