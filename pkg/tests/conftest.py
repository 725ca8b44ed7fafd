import pytest

from weylspin.rootsystem import cached


@pytest.fixture(scope="session")
def rs_of():
    """Shared immutable root systems, keyed like 'B3'."""
    def get(name: str):
        return cached(name[0].upper(), int(name[1:]))

    return get


@pytest.fixture(scope="session")
def adjoint_of(rs_of):
    """One adjoint realization per type, reused across tests."""
    from weylspin.oracles import AdjointRealization

    cache = {}

    def get(name: str):
        if name not in cache:
            cache[name] = AdjointRealization(rs_of(name))
        return cache[name]

    return get
