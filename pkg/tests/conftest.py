from fractions import Fraction

from hypothesis import settings, strategies as st

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

small_rationals = st.builds(
    Fraction, st.integers(-50, 50), st.integers(1, 12)
)
nonzero_rationals = small_rationals.filter(lambda r: r != 0)


def _acceptance_results(config):
    from test_acceptance import RESULTS

    return RESULTS


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    try:
        results = _acceptance_results(config)
    except ImportError:
        return
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(results):
        ok, detail = results[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {key}: {detail}")
