import pytest

from mzi.commands import GaussMziApp, HeisenbergApp, QfiApp, RegimesApp, SweepApp, VerifyApp
from ipcfg.mziapplication import MziApplication


@pytest.fixture(autouse=True)
def fresh_applications():
    """The traitlets applications are singletons; start every test without one."""
    classes = (GaussMziApp, QfiApp, SweepApp, RegimesApp, HeisenbergApp, VerifyApp,
               MziApplication)
    for cls in classes:
        cls.clear_instance()
    yield
    for cls in classes:
        cls.clear_instance()
