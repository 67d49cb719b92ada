# Trace event kinds
EVENT_SETUP = 'setup'
EVENT_GENERATE = 'generate'
EVENT_TX = 'tx'
EVENT_RX = 'rx'
EVENT_CONTROL_TX = 'control-tx'
EVENT_CONTROL_RX = 'control-rx'
EVENT_DELIVER = 'deliver'
EVENT_DROP = 'drop'
EVENT_FAILURE = 'failure'
EVENT_DEATH = 'death'
EVENT_EXCEPTION = 'exception'
EVENT_BLACKLIST = 'blacklist'
EVENT_ELECTION = 'election'

EVENT_KINDS = (
    EVENT_SETUP, EVENT_GENERATE, EVENT_TX, EVENT_RX, EVENT_CONTROL_TX,
    EVENT_CONTROL_RX, EVENT_DELIVER, EVENT_DROP, EVENT_FAILURE, EVENT_DEATH,
    EVENT_EXCEPTION, EVENT_BLACKLIST, EVENT_ELECTION,
)

TRACE_FIELDNAMES = ('iteration', 'kind', 'nodes', 'joules', 'detail')
TRACE_NODE_SEPARATOR = ';'
TRACE_DETAIL_SEPARATOR = ';'
TRACE_ENCODING = 'utf-8'

# Absolute tolerance, in joules, of the energy ledger closure check
LEDGER_TOLERANCE = 1e-9
