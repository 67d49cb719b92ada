DRAIN_OK = 'ok'
DRAIN_DIED = 'died'

# Ledger categories
CHARGE_DATA = 'data'
CHARGE_CONTROL = 'control'
