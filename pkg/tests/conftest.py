import pytest
from hypothesis import HealthCheck, settings

from ringbench.peirce import PeirceFrame
from ringbench.ring import make_direct_sum, make_dual, make_m2, make_zmod, resolve_element
from ringbench.search import SearchConfig, enumerate_reverse_maps
from strategies import involution

settings.register_profile(
    "default", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

# criterion -> (passed, seconds, detail); filled by test_acceptance
ACCEPTANCE = {}


@pytest.fixture
def acceptance():
    return ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        ok, secs, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'} ({secs:.2f}s) {detail}")


@pytest.fixture(scope="session")
def z6():
    return make_zmod(6)


@pytest.fixture(scope="session")
def m2z2():
    return make_m2(2)


@pytest.fixture(scope="session")
def dual6():
    return make_dual(6)


@pytest.fixture(scope="session")
def transpose(m2z2):
    return involution(m2z2, "transpose_m2")


@pytest.fixture(scope="session")
def negb(dual6):
    return involution(dual6, "neg_b_dual")


@pytest.fixture(scope="session")
def m2_frame(m2z2, transpose):
    return PeirceFrame(m2z2, resolve_element(m2z2, "E11"), transpose)


@pytest.fixture(scope="session")
def dual6_frame(dual6, negb):
    return PeirceFrame(dual6, resolve_element(dual6, "(3,0)"), negb)


@pytest.fixture(scope="session")
def m2_maps(m2z2, transpose):
    out = enumerate_reverse_maps(m2z2, SearchConfig(transpose))
    assert out.exhausted
    return out.maps


@pytest.fixture(scope="session")
def dual6_maps(dual6, negb):
    out = enumerate_reverse_maps(dual6, SearchConfig(negb))
    assert out.exhausted
    return out.maps


@pytest.fixture(scope="session")
def z2cubed():
    z2 = make_zmod(2)
    return make_direct_sum(make_direct_sum(z2, z2), z2)
