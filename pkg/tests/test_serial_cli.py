import numpy as np
import pytest

from orekex import ParseError, random_polynomial, ring_by_name
from orekex.cli import main
from orekex.serial import (parse_file, poly_from_text, poly_to_text, render_file,
                           ring_from_text, ring_to_text)

SKEW = ring_by_name("f125-skew2")
WEYL = ring_by_name("weyl3-f71")


def test_ring_round_trip():
    for ring in (SKEW, WEYL):
        assert ring_from_text(ring_to_text(ring)) == ring
    assert ring_to_text(SKEW) == "ring skew p=5 k=3 m=[3,3,0,1] sigma=[2,1]"
    assert ring_to_text(WEYL) == "ring weyl p=71 n=3"
    with pytest.raises(ParseError):
        ring_from_text("ring cyclic p=5")


def test_poly_round_trip():
    rng = np.random.default_rng(70)
    for ring in (SKEW, WEYL):
        for _ in range(50):
            h = random_polynomial(ring, int(rng.integers(0, 6)), int(rng.integers(1, 8)), rng)
            assert poly_from_text(ring, poly_to_text(h)) == h
        assert poly_from_text(ring, "0") == ring.zero()


def test_poly_text_shape():
    d1, d2 = SKEW.d(1), SKEW.d(2)
    h = SKEW.constant(SKEW.field.alpha()) * d1 * d2 + 2
    assert poly_to_text(h) == "[0,1,0]*d1^1*d2^1 + [2,0,0]*d1^0*d2^0"
    w = WEYL.x(2) ** 2 * WEYL.d(3)
    assert poly_to_text(w) == "1*x1^0*x2^2*x3^0*d1^0*d2^0*d3^1"


def test_file_round_trip():
    text = render_file(SKEW, 7, ["protocol params", "nu 10"])
    ring, seed, entries = parse_file(text)
    assert ring == SKEW and seed == 7
    assert ("protocol", "params") in entries and ("nu", "10") in entries
    withheld = render_file(SKEW, None, [])
    assert "seed withheld" in withheld
    assert parse_file(withheld)[1] is None
    with pytest.raises(ParseError):
        parse_file("not a header\n")


# -- CLI ---------------------------------------------------------------------------

def _run(*argv):
    return main(list(argv))


def test_cli_exchange_deterministic(tmp_path):
    a = tmp_path / "a.txt"
    b = tmp_path / "b.txt"
    args = ["exchange", "--ring", "f125-skew2", "--dL", "8", "--dPQ", "2",
            "--nu", "2", "--seed", "7"]
    assert _run(*args, "--out", str(a)) == 0
    assert _run(*args, "--out", str(b)) == 0
    assert a.read_bytes() == b.read_bytes()
    ring, seed, entries = parse_file(a.read_text())
    assert seed == 7
    labels = [rest.split()[1] for key, rest in entries if key == "msg"]
    assert labels == ["A_part", "B_part"]


def test_cli_three_pass(tmp_path):
    out = tmp_path / "t.txt"
    ans = tmp_path / "t.ans"
    rc = _run("three-pass", "--ring", "f125-skew2", "--dL", "6", "--dPQ", "2",
              "--nu", "2", "--seed", "9", "--out", str(out), "--answer-out", str(ans))
    assert rc == 0
    _, _, entries = parse_file(ans.read_text())
    kv = dict(entries)
    assert kv["recovered"] == kv["L"]


def test_cli_encrypt_decrypt_and_corruption(tmp_path):
    prefix = tmp_path / "alice"
    assert _run("keygen", "--scheme", "encrypt", "--ring", "f125-skew2",
                "--dL", "6", "--dPQ", "2", "--nu", "2", "--seed", "3",
                "--out-prefix", str(prefix)) == 0
    msg = tmp_path / "msg.bin"
    msg.write_bytes(b"ore polynomials lock boxes")
    ct = tmp_path / "ct.txt"
    assert _run("encrypt", "--pub", f"{prefix}.pub", "--in", str(msg),
                "--seed", "4", "--out", str(ct)) == 0
    out = tmp_path / "out.bin"
    assert _run("decrypt", "--sec", f"{prefix}.sec", "--in", str(ct),
                "--out", str(out)) == 0
    assert out.read_bytes() == msg.read_bytes()
    # flip one digit inside the m_e line: corruption must exit 3
    lines = ct.read_text().splitlines()
    idx = next(i for i, ln in enumerate(lines) if ln.startswith("m_e "))
    body = lines[idx]
    pos = body.index("[") + 1
    digit = body[pos]
    flipped = "1" if digit != "1" else "2"
    lines[idx] = body[:pos] + flipped + body[pos + 1:]
    ct.write_text("\n".join(lines) + "\n")
    assert _run("decrypt", "--sec", f"{prefix}.sec", "--in", str(ct),
                "--out", str(out)) == 3


def test_cli_sign_verify_and_tamper(tmp_path):
    prefix = tmp_path / "signer"
    assert _run("keygen", "--scheme", "sign", "--ring", "f125-skew2",
                "--dL", "5", "--da", "2", "--seed", "5",
                "--out-prefix", str(prefix)) == 0
    msg = tmp_path / "msg.bin"
    msg.write_bytes(b"signed statement")
    sig = tmp_path / "sig.txt"
    assert _run("sign", "--sec", f"{prefix}.sec", "--in", str(msg),
                "--seed", "6", "--out", str(sig)) == 0
    assert _run("verify", "--pub", f"{prefix}.pub", "--sig", str(sig)) == 0
    lines = sig.read_text().splitlines()
    idx = next(i for i, ln in enumerate(lines) if ln.startswith("m "))
    body = lines[idx]
    pos = body.index("[") + 1
    digit = body[pos]
    lines[idx] = body[:pos] + ("1" if digit != "1" else "2") + body[pos + 1:]
    sig.write_text("\n".join(lines) + "\n")
    assert _run("verify", "--pub", f"{prefix}.pub", "--sig", str(sig)) == 1
    # hashing variant
    assert _run("sign", "--sec", f"{prefix}.sec", "--in", str(msg),
                "--seed", "6", "--out", str(sig), "--hash") == 0
    assert _run("verify", "--pub", f"{prefix}.pub", "--sig", str(sig)) == 0


def test_cli_zkp(tmp_path):
    out = tmp_path / "zkp.txt"
    rc = _run("zkp", "--ring", "f125-skew2", "--seed", "11", "--rounds", "12",
              "--dl1", "2", "--dl2", "2", "--blind-degree", "3", "--out", str(out))
    assert rc == 0
    text = out.read_text()
    assert text.count("accept") == 12


def test_cli_check_weak():
    assert _run("check-weak", "--ring", "weyl2-f71",
                "--key-text", "1*x1^1*x2^0*d1^1*d2^0 + 3*x1^0*x2^0*d1^0*d2^0") == 1
    assert _run("check-weak", "--ring", "weyl2-f71",
                "--key-text", "1*x1^1*x2^0*d1^0*d2^0 + 3*x1^0*x2^0*d1^1*d2^0") == 0
    # non-graded key that commutes with the public element is still rejected
    assert _run("check-weak", "--ring", "weyl2-f71",
                "--key-text", "1*x1^0*x2^0*d1^1*d2^0 + 1*x1^0*x2^0*d1^2*d2^0",
                "--public-text", "1*x1^0*x2^0*d1^1*d2^0") == 1
    # skew rings have no grading screen
    assert _run("check-weak", "--ring", "f125-skew2",
                "--key-text", "[1,0,0]*d1^1*d2^0") == 2


def test_cli_estimate_table(capsys):
    assert _run("estimate", "--table") == 0
    out = capsys.readouterr().out
    assert "table-match: PASS" in out
    assert out.count(" OK") == 9
    assert _run("estimate", "--dL", "30", "--dPQ", "5", "--nu", "10") == 0
    out = capsys.readouterr().out
    assert "1.247955E+08" in out
    assert "3.012579E+06" in out or "3.012578E+06" in out
    assert _run("estimate") == 2  # missing arguments


def test_cli_challenge_replay(tmp_path):
    prefix = tmp_path / "chal"
    rc = _run("challenge", "--protocol", "exchange", "--ring", "f125-skew2",
              "--dL", "8", "--dPQ", "2", "--nu", "2", "--seed", "7",
              "--out-prefix", str(prefix))
    assert rc == 0
    public = (tmp_path / "chal.public").read_text()
    answer = (tmp_path / "chal.answer").read_text()
    assert "seed withheld" in public
    assert "seed 7" in answer
    assert "shared_key" in answer
    for secret_marker in ("f_A", "P_A", "shared_key"):
        assert secret_marker not in public
    # replaying the recorded seed reproduces the public view
    _, seed, _ = parse_file(answer)
    replay = tmp_path / "replay.txt"
    assert _run("exchange", "--ring", "f125-skew2", "--dL", "8", "--dPQ", "2",
                "--nu", "2", "--seed", str(seed), "--out", str(replay)) == 0
    assert replay.read_text() == public.replace("seed withheld", f"seed {seed}")


def test_cli_usage_errors(tmp_path):
    assert _run("decrypt", "--sec", str(tmp_path / "missing"), "--in",
                str(tmp_path / "nope"), "--out", str(tmp_path / "x")) == 2
    with pytest.raises(SystemExit) as exc:
        _run("exchange", "--ring", "f125-skew2")  # --seed missing
    assert exc.value.code == 2
