"""
Test configuration and fixtures for the skew cyclic code toolkit tests.
"""
from pathlib import Path

import orjson
import pytest

from src.models.ring import RingContext
from src.models.schemas import parse_poly
from src.services.codec import Message
from src.services.skew_code import CodeCase, classify, code_from_generators

CASE3_GENERATORS = ["x^4 + (1+u+u^2)x^2 - (u+u^2)x + (1+u+u^2)", "u(x^2-x+1)"]
CASE3_MESSAGE = ["(1+u+2u^2)x + (2u+u^2)", "(2+u)x + u"]
CASE3_MESSAGE_ROWS = [[[0, 2, 1], [1, 1, 2]], [[0, 1, 0], [2, 1, 0]]]
CASE3_CODEWORD = [[0, 2, 1], [1, 2, 0], [0, 1, 0], [1, 2, 0], [0, 2, 1], [1, 1, 2]]
CASE3_RECEIVED = [[0, 2, 1], [1, 2, 0], [0, 1, 0], [1, 2, 0], [0, 2, 2], [1, 1, 2]]
CASE2_GENERATOR = "(1+4u+u^2)x^2 + (4+u+4u^2)"


@pytest.fixture
def ctx333():
    """R_3 over F_3 with theta(u) = 2u."""
    return RingContext(3, 3, 2)


@pytest.fixture
def ctx534():
    """R_3 over F_5 with theta(u) = 4u."""
    return RingContext(5, 3, 4)


@pytest.fixture
def case3_code(ctx333):
    return code_from_generators(ctx333, 6, [parse_poly(g, ctx333) for g in CASE3_GENERATORS])


@pytest.fixture
def case3_form(case3_code):
    return classify(case3_code)


@pytest.fixture
def case3_message(ctx333):
    return Message(CodeCase.III, tuple(parse_poly(f, ctx333) for f in CASE3_MESSAGE))


@pytest.fixture
def case2_code(ctx534):
    return code_from_generators(ctx534, 4, [parse_poly(CASE2_GENERATOR, ctx534)])


@pytest.fixture
def case2_form(case2_code):
    return classify(case2_code)


@pytest.fixture
def case1_code(ctx333):
    """<u(x^2 - x + 1)> of length 6; no unit-leading codeword."""
    return code_from_generators(ctx333, 6, [parse_poly("u(x^2-x+1)", ctx333)])


@pytest.fixture
def small_case3_code():
    """<x^2 - 1, u(x - 1)> of length 4 over R_2, p = 3."""
    ctx = RingContext(3, 2, 2)
    return code_from_generators(ctx, 4, [parse_poly("x^2-1", ctx), parse_poly("u(x-1)", ctx)])


@pytest.fixture
def two_layer_torsion_code(ctx333):
    """<u(x - 1), u^2> of length 2: torsion generators on layers 1 and 2."""
    return code_from_generators(ctx333, 2, [parse_poly("u(x-1)", ctx333), parse_poly("u^2", ctx333)])


def write_json(path: Path, data) -> Path:
    path.write_bytes(orjson.dumps(data))
    return path


@pytest.fixture
def case3_code_file(tmp_path):
    return write_json(
        tmp_path / "case3_code.json",
        {"ctx": {"p": 3, "k": 3, "s": 2}, "n": 6, "generators": CASE3_GENERATORS},
    )


@pytest.fixture
def case3_message_file(tmp_path):
    return write_json(tmp_path / "case3_message.json", {"case": "III", "polys": CASE3_MESSAGE_ROWS})


@pytest.fixture
def case2_code_file(tmp_path):
    return write_json(
        tmp_path / "case2_code.json",
        {"ctx": {"p": 5, "k": 3, "s": 4}, "n": 4, "generators": [CASE2_GENERATOR]},
    )


@pytest.fixture
def fixtures_dir():
    return Path(__file__).resolve().parent.parent / "src" / "fixtures"
