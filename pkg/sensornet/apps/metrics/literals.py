FORMAT_CSV = 'csv'
FORMAT_JSON = 'json'

FORMATS = (FORMAT_CSV, FORMAT_JSON)

EXPORT_ENCODING = 'utf-8'

NODES_NAME = 'nodes'
CURVE_NAME = 'curve'
SUMMARY_NAME = 'summary'

NODES_FIELDNAMES = ('node_id', 'x', 'y', 'dist_to_base', 'death_iteration')
CURVE_FIELDNAMES = ('iteration', 'percent_alive')
SUMMARY_FIELDNAMES = (
    'strategy', 'seed', 'first_death', 'system_lifetime', 'utility_fraction',
    'death_spread', 'censored', 'sync_messages', 'sync_energy', 'delivered',
    'dropped', 'generated', 'iterations', 'death_distance_correlation',
)

# Fields the batch runner aggregates per strategy
AGGREGATED_FIELDS = ('first_death', 'system_lifetime', 'utility_fraction')

# Minimum number of dead nodes a rank correlation is computed over
CORRELATION_MIN_DEATHS = 3
