from .exceptions import MetricsError, UnknownAggregate


class Aggregate(object):
    """
    Reduce one field over a list of summary rows; rows where the field is
    missing (censored runs) are left out
    """
    label = None

    def __init__(self, argument):
        self.argument = argument

    def values(self, elements):
        return [element[self.argument] for element in elements if element[self.argument] is not None]

    def execute(self, elements):
        try:
            return self._execute(self.values(elements))
        except KeyError:
            raise MetricsError('Unknown field: %s' % self.argument)
        except TypeError as exception:
            raise MetricsError('Field aggregation error; %s' % exception)


class Count(Aggregate):
    label = 'count'

    def _execute(self, values):
        return len(values)


class Max(Aggregate):
    label = 'max'

    def _execute(self, values):
        if values:
            return max(values)


class Min(Aggregate):
    label = 'min'

    def _execute(self, values):
        if values:
            return min(values)


class Average(Aggregate):
    label = 'mean'

    def _execute(self, values):
        if values:
            return sum(values) / float(len(values))


class Ratio(Aggregate):
    """Largest over smallest value; how far apart the best and worst runs are"""
    label = 'max_min_ratio'

    def _execute(self, values):
        if values and min(values) > 0:
            return max(values) / float(min(values))


AGGREGATES_NAMES = {
    'Count': Count,
    'Max': Max,
    'Min': Min,
    'Average': Average,
    'Ratio': Ratio,
}


def get_aggregate(name, argument):
    try:
        return AGGREGATES_NAMES[name](argument)
    except KeyError:
        raise UnknownAggregate('Unknown aggregate: %s' % name)
