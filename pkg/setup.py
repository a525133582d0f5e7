import os
import sys

from setuptools import setup, find_packages

v = sys.version_info
if sys.version_info < (3, 8):
    msg = "FAIL: Requires Python 3.8 or later, " \
          "but setup.py was run using {}.{}.{}"
    print(msg.format(v.major, v.minor, v.micro))
    print("NOTE: Installation failed. Run setup.py using python3")
    sys.exit(1)

try:
    SETUP_DIRNAME = os.path.dirname(__file__)
except NameError:
    # We're probably being frozen, and __file__ triggered this NameError
    SETUP_DIRNAME = os.path.dirname(sys.argv[0])

if SETUP_DIRNAME != '':
    os.chdir(SETUP_DIRNAME)

SETUP_DIRNAME = os.path.abspath(SETUP_DIRNAME)

METADATA = os.path.join(SETUP_DIRNAME, 'curvelab', '__metadata__.py')
# Load the metadata using exec() so we don't trigger an import of
# curvelab.__init__
exec(compile(open(METADATA).read(), METADATA, 'exec'))

BASE_DIR = os.path.join(os.path.expanduser("~"), ".curvelab")
CONFIG_FILE = os.path.join(BASE_DIR, "curvelab_config.py")

setup(
    name='curvelab',
    version=__version__,
    description='Numerical verification of curvature-dependent growth '
                'estimates for harmonic functions and eigenfunctions',
    long_description=open(os.path.join(SETUP_DIRNAME, 'README.md')).read(),
    long_description_content_type='text/markdown',
    author=__author__,
    license=__license__,
    keywords='harmonic functions eigenfunctions doubling convexity '
             'spherical harmonics nodal sets',
    packages=find_packages(exclude=['docs', 'docs*']),
    package_data={'': ['*.md']},
    include_package_data=True,
    install_requires=['{}{}'.format(k, v)
                      for k, v in __dependencies__.items()],
    extras_require={'plots': ['matplotlib>=3.5']},
    tests_require=['pytest>=7', 'hypothesis>=6'],
    scripts=['scripts/curvelab']
)

if not os.path.exists(CONFIG_FILE):
    os.makedirs(BASE_DIR, exist_ok=True)
    with open(CONFIG_FILE, 'w') as f:
        msg = "# Here you can create config entries according to your " \
              "needs.\n" \
              "# For help, refer config.py in the curvelab package.\n" \
              "# Any entry you add here would override that from config " \
              "example\n"
        f.write(msg)
