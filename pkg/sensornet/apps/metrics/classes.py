from collections import namedtuple


class LifetimeSummary(namedtuple('LifetimeSummary', 'first_death system_lifetime utility_fraction death_spread censored')):
    """
    Lifetime figures of one run. A censored summary comes from a run that
    stopped with nodes still alive; it has no system lifetime and no
    utility fraction.
    """
    __slots__ = ()
