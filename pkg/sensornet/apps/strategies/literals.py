from topology.literals import BASE_STATION

STRATEGY_DIRECT = 'direct'
STRATEGY_DIFFUSION = 'diffusion'
STRATEGY_E3D = 'e3d'
STRATEGY_IDEAL_DIFFUSION = 'ideal-diffusion'
STRATEGY_RANDOM_CLUSTER = 'random-cluster'
STRATEGY_IDEAL_CLUSTER = 'ideal-cluster'

# Order matters: the index of a strategy in this tuple is the strategy index
# used to derive batch run seeds
STRATEGY_NAMES = (
    STRATEGY_DIRECT,
    STRATEGY_DIFFUSION,
    STRATEGY_E3D,
    STRATEGY_IDEAL_DIFFUSION,
    STRATEGY_RANDOM_CLUSTER,
    STRATEGY_IDEAL_CLUSTER,
)

# Setup phase charged before the first iteration
SETUP_NONE = 0
SETUP_BASE_BROADCAST = 1
SETUP_NEIGHBOR_PAIRS = 2

# Strategy knobs
KNOB_CLUSTERS = 'clusters'
KNOB_ROUND_LENGTH = 'round_length'
KNOB_MAX_NEIGHBORS = 'max_neighbors'
KNOB_MAX_RANGE = 'max_range'
KNOB_LOW_POWER_THRESHOLD = 'low_power_threshold'
KNOB_POWER_COMPARE_THRESHOLD = 'power_compare_threshold'
KNOB_QUEUE_LIMIT = 'queue_limit'

KNOB_NAMES = (
    KNOB_CLUSTERS, KNOB_ROUND_LENGTH, KNOB_MAX_NEIGHBORS, KNOB_MAX_RANGE,
    KNOB_LOW_POWER_THRESHOLD, KNOB_POWER_COMPARE_THRESHOLD, KNOB_QUEUE_LIMIT,
)

# Control messages
CONTROL_SETUP = 'setup'
CONTROL_BASE_BROADCAST = 'base-broadcast'
CONTROL_ACK = 'ack'
CONTROL_EXCEPTION = 'exception'
CONTROL_ADVERTISEMENT = 'advertisement'
CONTROL_JOIN = 'join'

# e3D exception reasons, highest priority first
EXCEPTION_QUEUE_FULL = 'queue-full'
EXCEPTION_NEAR_DEATH = 'near-death'
EXCEPTION_POWER_IMBALANCE = 'power-imbalance'

EXCEPTION_REASONS = (EXCEPTION_QUEUE_FULL, EXCEPTION_NEAR_DEATH, EXCEPTION_POWER_IMBALANCE)

BASE = BASE_STATION
