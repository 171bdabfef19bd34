import functools

from hypothesis import HealthCheck, settings

from cherednik.groups import from_family

settings.register_profile(
    "default", max_examples=60, deadline=None, derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@functools.lru_cache(maxsize=None)
def group(family, **params):
    return from_family(family, params)


def cyclic(n):
    return group("cyclic", n=n)


def symmetric(n):
    return group("symmetric", n=n)


def dihedral(m):
    return group("dihedral", m=m)


def gmpn(m, p, n):
    return group("G", m=m, p=p, n=n)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[n])
