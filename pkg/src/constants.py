"""
Constants used throughout the thermal lab.
"""

# Application version, recorded in every run manifest
VERSION = "0.3.0"
VERSION_NAME = "Commuting Projectors at T > 0"

# Lattice dimensions with a toric code
SUPPORTED_DIMENSIONS = (2, 3, 4)

# Dimension of the cells that carry qubits
QUBIT_DIMENSION = {2: 1, 3: 1, 4: 2}

# Term kinds
TERM_KINDS = {
    'STAR': 'star',
    'PLAQUETTE': 'plaquette',
    'FIELD': 'field',
}

# Pauli text labels, prefix order follows the exponent of i
PHASE_PREFIXES = ('+', 'i', '-', '-i')
WORD_BITS = 64

# Thermal sampling
DEFAULT_BETA = 1.0
DEFAULT_SAMPLES = 1000
DEFAULT_BURN_IN = 100
DEFAULT_THINNING = 1
DEFAULT_SEED = 0
N_BATCHES = 32
EXACT_MODE_MAX_TERMS = 20
THERMO_INTEGRATION_NODES = 16

# Dense oracles
MAX_DENSE_QUBITS = 12

# Holes and bounds
L_BETA_VARIANTS = ('lbeta', 'inline', 'small_squares')
DEFAULT_L_BETA_VARIANT = 'lbeta'
MAX_L_BETA = 10 ** 6

# Structure
EIGENVALUE_TOLERANCE = 1e-8
RECONSTRUCTION_TOLERANCE = 1e-8
SCHMIDT_CUTOFF = 1e-12
DECOMPOSITION_ATTEMPTS = 5
MAX_SUPPORT_SIZE = 8

# Toy model
TOY_STATES = 3
ENERGY_CHECK_INTERVAL = 100
ENERGY_TOLERANCE = 1e-9
MAX_ENUMERATION_SITES = 16

# Output
DEFAULT_OUTPUT_DIR = "runs"
LOGGER_NAME = "thermal_lab"
