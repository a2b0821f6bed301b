import functools
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from regseq.fixtures import BLOCK, CORPUS, SLOW_SNQ  # noqa: E402
from regseq.seqcore import QuotientSpec, materialize  # noqa: E402


@functools.lru_cache(maxsize=None)
def table(kind: str, n: int, *args):
    spec = getattr(QuotientSpec, kind)(*args)
    return materialize(spec, n)


@functools.lru_cache(maxsize=None)
def fixture_table(name: str):
    for f in (*CORPUS, BLOCK, SLOW_SNQ):
        if f.name == name:
            return f.table()
    raise KeyError(name)


ALL_FIXTURES = [f.name for f in CORPUS] + [BLOCK.name]


@pytest.fixture(params=ALL_FIXTURES)
def any_fixture(request):
    return fixture_table(request.param)
