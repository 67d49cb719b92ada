# Batch seed derivation
SEED_BASE_MULTIPLIER = 1000003
SEED_TOPOLOGY_MULTIPLIER = 1009

CONFIG_COMMENT = '#'
CONFIG_ENCODING = 'utf-8'

# Configuration file keys
KEY_ALGO = 'algo'
KEY_NODES = 'nodes'
KEY_AREA = 'area'
KEY_BASE = 'base'
KEY_SEED = 'seed'
KEY_OUT = 'out'
KEY_FORMAT = 'format'
KEY_TOPOLOGY = 'topology'
KEY_MAX_ITERATIONS = 'max_iterations'
KEY_TOPOLOGIES = 'topologies'
KEY_SEEDS_PER_TOPOLOGY = 'seeds_per_topology'
KEY_STRATEGIES = 'strategies'

# Placement options a topology file replaces
PLACEMENT_KEYS = (KEY_NODES, KEY_AREA, KEY_BASE)

ENERGY_KEYS = ('elec_per_bit', 'amp_per_bit_per_m2', 'data_bits', 'control_bits', 'initial_battery')

BATCH_SUMMARY_FILENAME = 'batch_summary.csv'
TRACE_FILENAME = 'trace.csv'

ROW_TYPE_RUN = 'run'

BATCH_SUMMARY_PREFIX = ('row_type', 'topology', 'replicate')

# Exit status of the management commands
EXIT_USAGE = 1
EXIT_RUNTIME = 2
