import json
import random

import pytest

from ac0poly.cli import run
from ac0poly.field import FieldCtx
from ac0poly.upoly import DensePoly, format_poly, parse_poly

CTX = FieldCtx(1000003)
p = CTX.p


def ok(*argv):
    code, out, err = run(list(argv))
    assert code == 0, err
    return out


def test_examples():
    assert ok("gcd", "x^2-3*x+2", "x^2-1", "-p", "1000003") == "x-1\n"
    assert ok("disc", "x^2+3*x+2") == "1\n"
    assert ok("resultant", "x^2-1", "x-2") == "3\n"
    assert ok("divrem", "x^3", "x^2-1") == "x\nx\n"
    assert ok("remainder", "x^3", "x^2-1") == "x\n"
    assert ok("sqfree", "(x-1)^2*(x-2)") == "1: x-2\n2: x-1\n"
    assert ok("newton", "frompos", "3,5") == "x^2-3*x+2\n"


def test_flags_before_or_after_subcommand():
    assert ok("-p", "101", "lcm", "x", "x-1") == ok("lcm", "x", "x-1", "-p", "101")
    assert json.loads(ok("--format", "json", "resultant", "x^2-1", "x-2")) == {"result": 3}


def test_circuit_pipeline(tmp_path):
    path = tmp_path / "esym.json"
    path.write_text(ok("circuit", "build", "esym", "-n", "8", "-d", "3"))
    stats = ok("circuit", "stats", f"@{path}", "--format", "json", "--check")
    assert json.loads(stats)["depth"] == 3
    assert ok("circuit", "eval", f"@{path}", "--inputs", "1,1,1,1,1,1,1,1", "--check") == "56\n"
    assert ok("resultant", "-x^2+1", "-x+2") == "-3\n"


def test_exit_codes():
    assert run(["gcd", "x^2+1", "x^^2"])[0] == 2
    assert run(["gcd", "x", "0"])[0] == 1
    code, _, err = run(["disc", "0"])
    assert code == 1 and err.split(":")[0]
    assert run(["circuit", "stats", "{\"gates\": 1}"])[0] == 2
    assert run(["circuit", "build", "nonsense"])[0] == 2
    assert run(["frobnicate"])[0] == 2


def test_output_parses_back():
    out = ok("lcm", "x^3+5*x+1", "x^2-7")
    f = parse_poly(CTX, out.strip())
    assert format_poly(f) == out.strip()
    code, out, _ = run(["mpoly", "gcd", "(x1+x2)*x1", "(x1+x2)*x2"])
    data = json.loads(out)
    assert data["nvars"] == 2 and data["degree_bound"] == 1


def _rand(rng, deg, monic=True):
    cs = [rng.randrange(p) for _ in range(deg)] + [1 if monic else rng.randrange(1, p)]
    return format_poly(DensePoly(CTX, cs)).replace(" ", "")


def _roots(rng, k):
    rs = [rng.randrange(40) for _ in range(k)]
    return "*".join(f"(x-{r})" for r in rs) or "1"


SMOKE = {
    "gcd": lambda r: ["gcd", _roots(r, 5), _roots(r, 4)],
    "lcm": lambda r: ["lcm", _roots(r, 4), _roots(r, 3)],
    "resultant": lambda r: ["resultant", _rand(r, 5, False), _rand(r, 3, False)],
    "disc": lambda r: ["disc", _roots(r, 5)],
    "divrem": lambda r: ["divrem", _rand(r, 6, False), _rand(r, 3, False)],
    "remainder": lambda r: ["remainder", _rand(r, 6), _rand(r, 2)],
    "sqfree": lambda r: ["sqfree", _roots(r, 7)],
    "sqpart": lambda r: ["sqpart", _roots(r, 7)],
    "bezout": lambda r: ["bezout", _rand(r, 4), _rand(r, 3)],
    "sylvester": lambda r: ["sylvester", "det", _rand(r, 3), _rand(r, 2)],
    "bezmat": lambda r: ["bezmat", "inv", _rand(r, 3), _rand(r, 3)],
    "toeplitz": lambda r: ["toeplitz-inv", json.dumps([1] + [r.randrange(p) for _ in range(4)])],
    "compose": lambda r: ["compose", r.choice(["sum", "prod"]), _rand(r, 3), _rand(r, 2)],
    "filter": lambda r: ["filter", _roots(r, 5), _roots(r, 4)],
    "threshold": lambda r: ["threshold", _roots(r, 6), _roots(r, 6), "2"],
    "diamond": lambda r: ["diamond", "dense", _roots(r, 4), _roots(r, 4), "--op", r.choice(["min", "max", "sum"])],
    "newton": lambda r: ["newton", "tops", _rand(r, 5), "-d", "8"],
}


@pytest.mark.parametrize("name", sorted(SMOKE))
def test_check_smoke(name):
    rng = random.Random(name)
    for i in range(100):
        argv = SMOKE[name](rng) + ["--check", "--seed", str(i)]
        code, _, err = run(argv)
        assert code in (0, 1), (argv, err)
        if code == 1:  # singular draws are domain errors, never check failures
            assert "CheckFailed" not in err


def test_check_smoke_circuits_and_mpoly():
    for i in range(5):
        for kind, extra in (("esym", ["-n", "5", "-d", "2"]), ("resultant", ["-n", "3", "-m", "2"]), ("gcd", ["-n", "3", "-m", "2"])):
            assert run(["circuit", "build", kind, *extra, "--check", "--seed", str(i)])[0] == 0
    for i in range(5):
        assert run(["mpoly", "gcd", "(x1+x2+1)*(x1-3)", "(x1+x2+1)*x2", "--check", "--seed", str(i)])[0] == 0
