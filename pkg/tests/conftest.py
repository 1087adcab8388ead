import pytest

from app.algebra.finite_field import FieldTable, build_field
from app.core.settings import settings


@pytest.fixture(autouse=True)
def no_progress(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setattr(settings, "show_progress", False)


@pytest.fixture
def f3() -> FieldTable:
    return build_field(3)


@pytest.fixture
def f4() -> FieldTable:
    return build_field(2, 2)


@pytest.fixture
def f5() -> FieldTable:
    return build_field(5)


@pytest.fixture
def f7() -> FieldTable:
    return build_field(7)
