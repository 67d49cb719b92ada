VERSION = (0, 3, 0, 'final', 0)


def get_version(version=None):
    """
    Version string from a ``(major, minor, micro, release level, serial)``
    tuple; the micro number is left out when zero
    """
    major, minor, micro, level, serial = version or VERSION
    if level not in ('alpha', 'beta', 'rc', 'final'):
        raise ValueError('Unknown release level: %s' % level)

    parts = [major, minor] + ([micro] if micro else [])
    version_string = '.'.join(str(part) for part in parts)
    if level != 'final':
        version_string += {'alpha': 'a', 'beta': 'b', 'rc': 'rc'}[level] + str(serial)
    return version_string


__license__ = 'GPL'
__status__ = 'Beta'
__title__ = 'sensornet'
__version__ = get_version()
