import json

import numpy as np


class JSONEncoder(json.JSONEncoder):
    """
    JSONEncoder subclass that knows how to encode numpy values, named
    tuples and sets.
    """
    def default(self, o):
        if isinstance(o, np.generic):
            return o.item()
        elif hasattr(o, 'tolist'):
            return o.tolist()
        elif hasattr(o, '_asdict'):
            return o._asdict()
        elif isinstance(o, (set, frozenset)):
            return sorted(o)
        else:
            return super(JSONEncoder, self).default(o)
