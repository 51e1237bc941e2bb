import os
import subprocess
import sys

import pytest

from buchsbaum_lab import _reduce_py, kernel
from buchsbaum_lab.core import FreeModule, PolyRing, koszul_map
from buchsbaum_lab.groebner import buchberger, syzygy_module
from buchsbaum_lab._layout import Layout
from buchsbaum_lab.cli import parse_ideal

from conftest import data_path

needs_compiled = pytest.mark.skipif(not kernel.compiled_available(), reason="compiled kernel not built")


def _gb_data(gens, ambient, backend):
    gb = buchberger(gens, ambient, backend=backend)
    return [tuple(map(tuple, g)) for g in gb.elements], gb.numerator_of_quotient()


def _cases():
    R3, R4 = PolyRing(4), PolyRing(5)
    skew = [(R3.parse(t),) for t in ("x0*x2", "x0*x3", "x1*x2", "x1*x3")]
    cubic = [(R3.parse(t),) for t in ("x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2")]
    quad = [(R4.parse(t),) for t in ("x0*x1 + 3*x2*x4 - x3^2", "x1^2 - 7*x0*x4", "x2*x3 + x0*x2 - x4^2")]
    d2 = koszul_map(R3, 2)
    return [
        ("skew", skew, FreeModule(R3, [0])),
        ("cubic", cubic, FreeModule(R3, [0])),
        ("quadrics", quad, FreeModule(R4, [0])),
        ("koszul", [tuple(c) for c in d2.cols], d2.target),
    ]


@needs_compiled
@pytest.mark.parametrize("case", _cases(), ids=lambda c: c[0])
def test_backends_agree_on_bases(case):
    _, gens, ambient = case
    assert _gb_data(gens, ambient, "python") == _gb_data(gens, ambient, "compiled")


@needs_compiled
@pytest.mark.parametrize("case", _cases(), ids=lambda c: c[0])
def test_backends_agree_on_syzygies(case):
    _, gens, ambient = case
    a = syzygy_module(gens, ambient, backend="python")
    b = syzygy_module(gens, ambient, backend="compiled")
    assert a.cols == b.cols and a.source.twists == b.source.twists


@needs_compiled
def test_wide_layout_falls_back():
    R = PolyRing(8)
    lay = Layout(R.nvars, [0])
    assert isinstance(kernel.make_reducer(lay, R.p, "compiled"), _reduce_py.Reducer)


def test_python_backend_forced():
    env = dict(os.environ, BUCHSBAUM_LAB_BACKEND="python")
    r = subprocess.run([sys.executable, "-c", "from buchsbaum_lab.kernel import active_backend;"
                        "print(active_backend())"], capture_output=True, text=True, env=env, timeout=60)
    assert r.stdout.strip() == "python"


def test_python_reducer_interface():
    R = PolyRing(3)
    lay = Layout(R.nvars, [0])
    red = kernel.make_reducer(lay, R.p, "python")
    assert len(red) == 0


@needs_compiled
def test_backends_agree_on_surface_syzygies():
    f = parse_ideal(data_path("b115.ideal"))
    gens = [(g,) for g in f.generators]
    amb = FreeModule(f.ring, [0])
    a = syzygy_module(gens, amb, backend="python")
    b = syzygy_module(gens, amb, backend="compiled")
    assert a.cols == b.cols and a.source.twists == b.source.twists
