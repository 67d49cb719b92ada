"""
Experiment configuration files: one ``key=value`` pair per line, ``#``
starting a comment. Values given on the command line win over the file,
which wins over the project settings.
"""
import logging

import pyparsing

from metrics.literals import FORMATS
from strategies.literals import (
    KNOB_CLUSTERS, KNOB_LOW_POWER_THRESHOLD, KNOB_MAX_NEIGHBORS,
    KNOB_MAX_RANGE, KNOB_POWER_COMPARE_THRESHOLD, KNOB_QUEUE_LIMIT,
    KNOB_ROUND_LENGTH, STRATEGY_NAMES)

from .exceptions import ConfigurationError
from .literals import (
    CONFIG_COMMENT, CONFIG_ENCODING, KEY_ALGO, KEY_AREA, KEY_BASE,
    KEY_FORMAT, KEY_MAX_ITERATIONS, KEY_NODES, KEY_OUT, KEY_SEED,
    KEY_SEEDS_PER_TOPOLOGY, KEY_STRATEGIES, KEY_TOPOLOGIES, KEY_TOPOLOGY)

logger = logging.getLogger(__name__)

config_key = pyparsing.Word(pyparsing.alphas, pyparsing.alphanums + '_')
config_value = pyparsing.CharsNotIn(CONFIG_COMMENT + '\n')
config_line = pyparsing.Opt(config_key('key') + pyparsing.Suppress('=') + config_value('value')) + pyparsing.StringEnd()
config_line.ignore(pyparsing.python_style_comment)


def parse_area(text):
    width, separator, height = text.strip().lower().partition('x')
    try:
        if not separator:
            raise ValueError
        width, height = float(width), float(height)
    except ValueError:
        raise ValueError('malformed area "%s"; expected WIDTHxHEIGHT, for example 100x100' % text)
    if width <= 0 or height <= 0:
        raise ValueError('area dimensions must be positive; got %s' % text)
    return width, height


def parse_base(text):
    try:
        x, y = text.split(',')
        return float(x), float(y)
    except ValueError:
        raise ValueError('malformed base station position "%s"; expected X,Y' % text)


def parse_strategies(text):
    names = tuple(name.strip() for name in text.split(',') if name.strip())
    unknown = [name for name in names if name not in STRATEGY_NAMES]
    if unknown or not names:
        raise ValueError('unknown strategies: %s; choose from: %s' % (', '.join(unknown) or text, ', '.join(STRATEGY_NAMES)))
    return names


def parse_format(text):
    text = text.strip().lower()
    if text not in FORMATS:
        raise ValueError('unknown format "%s"; choose from: %s' % (text, ', '.join(FORMATS)))
    return text


def parse_optional_float(text):
    if text.strip().lower() in ('', 'none'):
        return None
    return float(text)


def parse_integer(text):
    return int(text.strip())


CONFIG_CONVERTERS = {
    KEY_ALGO: str,
    KEY_NODES: parse_integer,
    KEY_AREA: parse_area,
    KEY_BASE: parse_base,
    KEY_SEED: parse_integer,
    KEY_OUT: str,
    KEY_FORMAT: parse_format,
    KEY_TOPOLOGY: str,
    KEY_MAX_ITERATIONS: parse_integer,
    KEY_TOPOLOGIES: parse_integer,
    KEY_SEEDS_PER_TOPOLOGY: parse_integer,
    KEY_STRATEGIES: parse_strategies,
    KNOB_CLUSTERS: parse_integer,
    KNOB_ROUND_LENGTH: parse_integer,
    KNOB_MAX_NEIGHBORS: parse_integer,
    KNOB_MAX_RANGE: parse_optional_float,
    KNOB_LOW_POWER_THRESHOLD: float,
    KNOB_POWER_COMPARE_THRESHOLD: float,
    KNOB_QUEUE_LIMIT: parse_integer,
    'elec_per_bit': float,
    'amp_per_bit_per_m2': float,
    'data_bits': parse_integer,
    'control_bits': parse_integer,
    'initial_battery': float,
}


def parse_config(lines, path=None):
    values = {}
    for line_number, line in enumerate(lines, 1):
        try:
            parsed = config_line.parse_string(line.rstrip('\r\n'))
        except pyparsing.ParseException as exception:
            raise ConfigurationError('Malformed line; expected key=value (%s)' % exception.msg, path=path, line=line_number)

        if 'key' not in parsed:
            continue

        key = parsed['key']
        if key not in CONFIG_CONVERTERS:
            raise ConfigurationError('Unknown key: %s' % key, path=path, line=line_number)
        if key in values:
            raise ConfigurationError('Key "%s" given more than once' % key, path=path, line=line_number)

        try:
            values[key] = CONFIG_CONVERTERS[key](parsed['value'].strip())
        except ValueError as exception:
            raise ConfigurationError('Bad value for "%s"; %s' % (key, exception), path=path, line=line_number)

    return values


def load_config(path):
    try:
        with open(path, 'rb') as file_object:
            lines = file_object.read().decode(CONFIG_ENCODING).splitlines()
    except (IOError, OSError, UnicodeDecodeError) as exception:
        raise ConfigurationError('Unable to read configuration; %s' % exception, path=path)

    values = parse_config(lines, path=path)
    logger.debug('read %d configuration values from: %s' % (len(values), path))
    return values


def merge_options(defaults, config_values, flag_values):
    """
    Layer the three sources; ``None`` in ``flag_values`` means the flag
    was not given
    """
    options = dict(defaults)
    options.update(config_values)
    options.update((key, value) for key, value in flag_values.items() if value is not None)
    return options
