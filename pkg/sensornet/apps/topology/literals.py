# Destination id used for the base station wherever a node id is expected
BASE_STATION = -1

DEFAULT_BASE = (0.0, 0.0)

CSV_FIELDNAMES = ('node_id', 'x', 'y')
CSV_COMMENT = '#'
CSV_COMMENT_BASE = 'base'
CSV_COMMENT_AREA = 'area'
CSV_COMMENT_SEED = 'seed'
CSV_ENCODING = 'utf-8'
