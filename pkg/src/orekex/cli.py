"""Command-line driver.

Every randomized subcommand requires ``--seed``; equal seeds and arguments
produce byte-identical output files.  Exit codes: 0 success, 1 protocol or
verification failure, 2 usage error, 3 corrupt input (failed division or
decoding).
"""

from __future__ import annotations

import argparse
import hashlib
import sys

import numpy as np

from . import costs, serial
from .encoding import decode_bytes, encode_bytes
from .errors import (EncodingError, NotDivisibleError, OreKexError, ParseError,
                     ProtocolError, ResampleExhaustedError)
from .orepoly import random_polynomial
from .protocols import (CommutingSetup, EncryptionPublicKey, EncryptionSecretKey,
                        Ciphertext, FactorizationProver, PrivateTuple,
                        PublicParameters, SignaturePublicKey, SignatureSecretKey,
                        SignatureTuple, encrypt, encryption_keygen, decrypt,
                        run_key_exchange, run_zkp, sign, signature_keygen,
                        three_pass_exchange, verify_signature)
from .rings import RING_ALIASES, ring_by_name
from .serial import (constant_poly_from_text, constant_poly_to_text, parse_file,
                     poly_from_text, poly_to_text, render_file, ring_from_text)
from .weakkeys import screen_private_key, grading_vector


def _ring_arg(text: str):
    if text.startswith("ring "):
        return ring_from_text(text)
    return ring_by_name(text)


def _rng(seed: int):
    return np.random.default_rng(seed)


def _write(path: str | None, content: str):
    if path is None:
        sys.stdout.write(content)
    else:
        with open(path, "w") as fh:
            fh.write(content)


def _read_kv(path: str):
    with open(path) as fh:
        ring, seed, entries = parse_file(fh.read())
    return ring, seed, entries


# -- keygen ------------------------------------------------------------------

def cmd_keygen(args) -> int:
    ring = _ring_arg(args.ring)
    rng = _rng(args.seed)
    prefix = args.out_prefix
    if args.scheme in ("kex", "encrypt"):
        params = PublicParameters.generate(ring, args.dL, args.dPQ, args.nu, rng)
        lines = [
            "protocol params",
            f"nu {params.nu}",
            f"L {poly_to_text(params.public_l)}",
            f"P {poly_to_text(params.left_gen)}",
            f"Q {poly_to_text(params.right_gen)}",
        ]
        _write(f"{prefix}.params", render_file(ring, args.seed, lines))
        if args.scheme == "encrypt":
            pub, sec = encryption_keygen(params, rng)
            pub_lines = lines[:]
            pub_lines[0] = "protocol encrypt-public"
            pub_lines.append(f"P_Alice {poly_to_text(pub.p_alice)}")
            _write(f"{prefix}.pub", render_file(ring, args.seed, pub_lines))
            sec_lines = [
                "protocol encrypt-secret",
                f"nu {params.nu}",
                f"L {poly_to_text(params.public_l)}",
                f"P {poly_to_text(params.left_gen)}",
                f"Q {poly_to_text(params.right_gen)}",
                f"P_A {poly_to_text(sec.priv.p_side)}",
                f"Q_A {poly_to_text(sec.priv.q_side)}",
                f"f {constant_poly_to_text(sec.priv.f)}",
                f"g {constant_poly_to_text(sec.priv.g)}",
            ]
            _write(f"{prefix}.sec", render_file(ring, args.seed, sec_lines))
    else:  # sign
        pub, sec = signature_keygen(ring, rng, d_l=args.dL, d_a=args.da)
        _write(f"{prefix}.pub", render_file(ring, args.seed, [
            "protocol sign-public",
            f"L {poly_to_text(pub.public_l)}",
            f"P_Alice {poly_to_text(pub.p_alice)}",
        ]))
        _write(f"{prefix}.sec", render_file(ring, args.seed, [
            "protocol sign-secret",
            f"L {poly_to_text(sec.public_l)}",
            f"a1 {poly_to_text(sec.a1)}",
            f"a2 {poly_to_text(sec.a2)}",
        ]))
    return 0


# -- exchange ------------------------------------------------------------------

def _exchange_texts(ring, args) -> tuple[str, str]:
    rng = _rng(args.seed)
    params = PublicParameters.generate(ring, args.dL, args.dPQ, args.nu, rng)
    result = run_key_exchange(params, rng)
    lines = [
        "protocol exchange",
        f"nu {params.nu}",
        f"L {poly_to_text(params.public_l)}",
        f"P {poly_to_text(params.left_gen)}",
        f"Q {poly_to_text(params.right_gen)}",
    ]
    for entry in result.transcript.entries:
        lines.append(f"msg {entry.sender} {entry.label} {poly_to_text(entry.message)}")
    transcript_text = render_file(ring, args.seed, lines)
    answer_lines = [
        "protocol exchange-answer",
        f"f_A {constant_poly_to_text(result.alice.f)}",
        f"g_A {constant_poly_to_text(result.alice.g)}",
        f"f_B {constant_poly_to_text(result.bob.f)}",
        f"g_B {constant_poly_to_text(result.bob.g)}",
        f"P_A {poly_to_text(result.alice.p_side)}",
        f"Q_A {poly_to_text(result.alice.q_side)}",
        f"P_B {poly_to_text(result.bob.p_side)}",
        f"Q_B {poly_to_text(result.bob.q_side)}",
        f"shared_key {poly_to_text(result.shared_key)}",
    ]
    answer_text = render_file(ring, args.seed, answer_lines)
    return transcript_text, answer_text


def cmd_exchange(args) -> int:
    ring = _ring_arg(args.ring)
    transcript_text, answer_text = _exchange_texts(ring, args)
    _write(args.out, transcript_text)
    if args.key_out:
        _write(args.key_out, answer_text)
    return 0


# -- three-pass ------------------------------------------------------------------

def _three_pass_texts(ring, args) -> tuple[str, str, bool]:
    rng = _rng(args.seed)
    setup = CommutingSetup.generate(ring, args.dPQ, args.nu, rng)
    secret = _noncommuting_secret(ring, args.dL, setup, rng)
    result = three_pass_exchange(setup, secret, rng)
    lines = [
        "protocol three-pass",
        f"nu {setup.nu}",
        f"P {poly_to_text(setup.left_gen)}",
        f"Q {poly_to_text(setup.right_gen)}",
    ]
    for entry in result.transcript.entries:
        lines.append(f"msg {entry.sender} {entry.label} {poly_to_text(entry.message)}")
    public_text = render_file(ring, args.seed, lines)
    answer_text = render_file(ring, args.seed, [
        "protocol three-pass-answer",
        f"L {poly_to_text(secret)}",
        f"f_A {constant_poly_to_text(result.alice.f)}",
        f"g_A {constant_poly_to_text(result.alice.g)}",
        f"f_B {constant_poly_to_text(result.bob.f)}",
        f"g_B {constant_poly_to_text(result.bob.g)}",
        f"recovered {poly_to_text(result.recovered)}",
    ])
    return public_text, answer_text, result.recovered == secret


def _noncommuting_secret(ring, d_l, setup, rng, max_attempts: int = 100):
    terms = max(2 * d_l, 4)
    for _ in range(max_attempts):
        cand = random_polynomial(ring, d_l, terms, rng)
        if not cand.commutes_with(setup.left_gen) and not cand.commutes_with(setup.right_gen):
            return cand
    raise ResampleExhaustedError("could not sample a usable secret element")


def cmd_three_pass(args) -> int:
    ring = _ring_arg(args.ring)
    public_text, answer_text, ok = _three_pass_texts(ring, args)
    _write(args.out, public_text)
    if args.answer_out:
        _write(args.answer_out, answer_text)
    if not ok:
        print("three-pass recovery FAILED", file=sys.stderr)
        return 1
    return 0


# -- encryption ------------------------------------------------------------------

def _load_encrypt_pub(path: str) -> EncryptionPublicKey:
    ring, _, entries = _read_kv(path)
    kv = serial.entries_dict(entries)
    params = PublicParameters(
        ring,
        poly_from_text(ring, kv["L"]),
        poly_from_text(ring, kv["P"]),
        poly_from_text(ring, kv["Q"]),
        int(kv["nu"]),
    )
    return EncryptionPublicKey(params, poly_from_text(ring, kv["P_Alice"]))


def _load_encrypt_sec(path: str) -> EncryptionSecretKey:
    ring, _, entries = _read_kv(path)
    kv = serial.entries_dict(entries)
    params = PublicParameters(
        ring,
        poly_from_text(ring, kv["L"]),
        poly_from_text(ring, kv["P"]),
        poly_from_text(ring, kv["Q"]),
        int(kv["nu"]),
    )
    priv = PrivateTuple(
        poly_from_text(ring, kv["P_A"]),
        poly_from_text(ring, kv["Q_A"]),
        constant_poly_from_text(ring.p, kv["f"]),
        constant_poly_from_text(ring.p, kv["g"]),
    )
    return EncryptionSecretKey(params, priv)


def cmd_encrypt(args) -> int:
    pub = _load_encrypt_pub(args.pub)
    with open(args.infile, "rb") as fh:
        data = fh.read()
    message = encode_bytes(pub.params.ring, data)
    ct = encrypt(pub, message, _rng(args.seed))
    _write(args.out, render_file(pub.params.ring, args.seed, [
        "protocol encrypt",
        f"m_e {poly_to_text(ct.m_e)}",
        f"P_Bob {poly_to_text(ct.p_bob)}",
    ]))
    return 0


def cmd_decrypt(args) -> int:
    sec = _load_encrypt_sec(args.sec)
    ring, _, entries = _read_kv(args.infile)
    kv = serial.entries_dict(entries)
    if ring != sec.params.ring:
        raise ParseError("ciphertext ring differs from the secret key's")
    ct = Ciphertext(poly_from_text(ring, kv["m_e"]), poly_from_text(ring, kv["P_Bob"]))
    data = decode_bytes(decrypt(sec, ct))
    with open(args.out, "wb") as fh:
        fh.write(data)
    return 0


# -- signatures ------------------------------------------------------------------

def _message_poly(ring, data: bytes, hashed: bool):
    if hashed:
        data = hashlib.sha256(data).digest()
    return encode_bytes(ring, data)


def cmd_sign(args) -> int:
    ring, _, entries = _read_kv(args.sec)
    kv = serial.entries_dict(entries)
    sec = SignatureSecretKey(ring, poly_from_text(ring, kv["L"]),
                             poly_from_text(ring, kv["a1"]),
                             poly_from_text(ring, kv["a2"]))
    with open(args.infile, "rb") as fh:
        data = fh.read()
    message = _message_poly(ring, data, args.hash)
    sig = sign(sec, message, _rng(args.seed))
    _write(args.out, render_file(ring, args.seed, [
        "protocol sign",
        f"hashed {int(args.hash)}",
        f"m {poly_to_text(sig.m)}",
        f"gamma {poly_to_text(sig.gamma)}",
        f"q1 {poly_to_text(sig.q1)}",
        f"r1 {poly_to_text(sig.r1)}",
        f"q2 {poly_to_text(sig.q2)}",
        f"r2 {poly_to_text(sig.r2)}",
        f"eps1 {poly_to_text(sig.eps1)}",
        f"eps2 {poly_to_text(sig.eps2)}",
    ]))
    return 0


def cmd_verify(args) -> int:
    ring, _, entries = _read_kv(args.pub)
    kv = serial.entries_dict(entries)
    pub = SignaturePublicKey(ring, poly_from_text(ring, kv["L"]),
                             poly_from_text(ring, kv["P_Alice"]))
    sring, _, sentries = _read_kv(args.sig)
    skv = serial.entries_dict(sentries)
    if sring != ring:
        raise ParseError("signature ring differs from the public key's")
    sig = SignatureTuple(*(poly_from_text(ring, skv[k])
                           for k in ("m", "gamma", "q1", "r1", "q2", "r2", "eps1", "eps2")))
    if verify_signature(pub, sig):
        print("accept")
        return 0
    print("reject")
    return 1


# -- zero-knowledge rounds ---------------------------------------------------------

def cmd_zkp(args) -> int:
    ring = _ring_arg(args.ring)
    rng = _rng(args.seed)
    ell1 = _nontrivial_factor(ring, args.dl1, rng)
    ell2 = _nontrivial_factor(ring, args.dl2, rng)
    prover = FactorizationProver(ell1, ell2, blind_degree=args.blind_degree)
    result = run_zkp(prover.public_l, prover, args.rounds, rng)
    lines = ["protocol zkp", f"rounds {args.rounds}",
             f"L {poly_to_text(prover.public_l)}"]
    for i, rnd in enumerate(result.rounds):
        verdict = "accept" if rnd.accepted else "reject"
        lines.append(f"round {i} {rnd.challenge} {verdict}")
    _write(args.out, render_file(ring, args.seed, lines))
    return 0 if result.all_accepted else 1


def _nontrivial_factor(ring, degree, rng, max_attempts: int = 100):
    for _ in range(max_attempts):
        cand = random_polynomial(ring, degree, max(2 * degree, 4), rng)
        if max(cand.d_degrees()) >= 1:
            return cand
    raise ResampleExhaustedError("could not sample a factor with positive d-degree")


# -- weak keys -------------------------------------------------------------------

def cmd_check_weak(args) -> int:
    if args.key_text:
        if not args.ring:
            raise ParseError("--key-text requires --ring")
        ring = _ring_arg(args.ring)
        key = poly_from_text(ring, args.key_text)
    else:
        ring, _, entries = _read_kv(args.key)
        kv = serial.entries_dict(entries)
        key = poly_from_text(ring, kv["key"])
    if not ring.is_weyl:
        raise ParseError("weak-key screening is defined for weyl rings only")
    public = None
    if args.public_text:
        public = poly_from_text(ring, args.public_text)
    elif args.public:
        pring, _, pentries = _read_kv(args.public)
        if pring != ring:
            raise ParseError("public element lives in a different ring")
        public = poly_from_text(ring, serial.entries_dict(pentries)["key"])
    if public is None:
        graded = grading_vector(key)
        if graded is not None:
            print("reject graded")
            return 1
        print("accept")
        return 0
    report = screen_private_key(key, public)
    print(str(report))
    return 0 if report.accepted else 1


# -- cost estimates ----------------------------------------------------------------

def _fmt(v: float) -> str:
    return f"{v:.6E}"


def cmd_estimate(args) -> int:
    if args.table:
        checks = costs.check_reference_table()
        print("tuple          secret-param  initial-msg   shared-secret key-KB"
              "  brute-force(model) match")
        all_ok = True
        for chk, row in zip(checks, costs.REFERENCE_ROWS):
            d_l, d_pq, nu = chk.tuple_
            rep = chk.report
            status = "OK" if chk.matches else "FAIL"
            all_ok &= chk.matches
            print(f"({d_l},{d_pq},{nu})".ljust(15)
                  + f"{_fmt(rep.secret_param)}  {_fmt(rep.initial_message)}  "
                  + f"{_fmt(rep.shared_secret)}  {rep.key_size_kb:<6d} "
                  + f"{_fmt(rep.brute_force)}       {status}")
        print(f"table-match: {'PASS' if all_ok else 'FAIL'}")
        return 0 if all_ok else 1
    if args.dL is None or args.dPQ is None or args.nu is None:
        raise ParseError("estimate needs --dL, --dPQ and --nu (or --table)")
    t = costs.SecurityTuple(args.dL, args.dPQ, args.nu, p=args.p, omega=args.omega)
    rep = costs.cost_report(t)
    print(f"security-tuple ({t.d_l},{t.d_pq},{t.nu}) p={t.p} omega={t.omega}")
    print(f"secret-param    {_fmt(rep.secret_param)}")
    print(f"initial-message {_fmt(rep.initial_message)}")
    print(f"shared-secret   {_fmt(rep.shared_secret)}")
    print(f"key-size-kb     {rep.key_size_kb}")
    print(f"brute-force     {_fmt(rep.brute_force)} (model estimate)")
    return 0


# -- challenges --------------------------------------------------------------------

def cmd_challenge(args) -> int:
    ring = _ring_arg(args.ring)
    if args.protocol == "exchange":
        build = _exchange_texts
    else:
        build = lambda r, a: _three_pass_texts(r, a)[:2]  # noqa: E731
    public_text, answer_text = build(ring, args)[:2]
    replay_public = build(ring, args)[0]
    if replay_public != public_text:
        print("challenge replay check FAILED", file=sys.stderr)
        return 1
    public_text = public_text.replace(f"seed {args.seed}\n", "seed withheld\n", 1)
    _write(f"{args.out_prefix}.public", public_text)
    _write(f"{args.out_prefix}.answer", answer_text)
    return 0


# -- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ore-kex",
        description="Key exchange and companion protocols over multivariate "
                    "Ore polynomial rings.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_ring(p, default="f125-skew2"):
        p.add_argument("--ring", default=default,
                       help=f"ring alias ({', '.join(sorted(RING_ALIASES))}) "
                            "or a full 'ring ...' descriptor line")

    def add_seed(p):
        p.add_argument("--seed", type=int, required=True,
                       help="64-bit seed; equal seeds reproduce outputs exactly")

    p = sub.add_parser("keygen", help="generate parameter and key files")
    add_ring(p)
    add_seed(p)
    p.add_argument("--scheme", choices=("kex", "encrypt", "sign"), default="kex")
    p.add_argument("--dL", type=int, default=50)
    p.add_argument("--dPQ", type=int, default=5)
    p.add_argument("--nu", type=int, default=10)
    p.add_argument("--da", type=int, default=3, help="degree of the signing pair")
    p.add_argument("--out-prefix", required=True)
    p.set_defaults(func=cmd_keygen)

    p = sub.add_parser("exchange", help="run one full key-exchange session")
    add_ring(p)
    add_seed(p)
    p.add_argument("--dL", type=int, default=50)
    p.add_argument("--dPQ", type=int, default=5)
    p.add_argument("--nu", type=int, default=10)
    p.add_argument("--out", default=None, help="transcript file (default stdout)")
    p.add_argument("--key-out", default=None, help="private/answer file")
    p.set_defaults(func=cmd_exchange)

    p = sub.add_parser("three-pass", help="send a private element under two-sided locks")
    add_ring(p)
    add_seed(p)
    p.add_argument("--dL", type=int, default=50)
    p.add_argument("--dPQ", type=int, default=5)
    p.add_argument("--nu", type=int, default=10)
    p.add_argument("--out", default=None)
    p.add_argument("--answer-out", default=None)
    p.set_defaults(func=cmd_three_pass)

    p = sub.add_parser("encrypt", help="encrypt a byte file under a public key")
    add_seed(p)
    p.add_argument("--pub", required=True)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_encrypt)

    p = sub.add_parser("decrypt", help="decrypt a ciphertext file")
    p.add_argument("--sec", required=True)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_decrypt)

    p = sub.add_parser("sign", help="sign a byte file")
    add_seed(p)
    p.add_argument("--sec", required=True)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", default=None)
    p.add_argument("--hash", action="store_true",
                   help="sign the sha256 digest instead of the raw bytes")
    p.set_defaults(func=cmd_sign)

    p = sub.add_parser("verify", help="verify a signature file")
    p.add_argument("--pub", required=True)
    p.add_argument("--sig", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("zkp", help="prove knowledge of a factorization, interactively")
    add_ring(p)
    add_seed(p)
    p.add_argument("--rounds", type=int, default=40)
    p.add_argument("--dl1", type=int, default=3)
    p.add_argument("--dl2", type=int, default=3)
    p.add_argument("--blind-degree", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_zkp)

    p = sub.add_parser("check-weak", help="screen a weyl-ring key for weakness")
    add_ring(p, default=None)
    p.add_argument("--key", default=None)
    p.add_argument("--key-text", default=None)
    p.add_argument("--public", default=None)
    p.add_argument("--public-text", default=None)
    p.set_defaults(func=cmd_check_weak)

    p = sub.add_parser("estimate", help="step-count cost model")
    p.add_argument("--dL", type=int, default=None)
    p.add_argument("--dPQ", type=int, default=None)
    p.add_argument("--nu", type=int, default=None)
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--omega", type=float, default=costs.OMEGA_DEFAULT)
    p.add_argument("--table", action="store_true",
                   help="recompute the whole reference table with a match column")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("challenge", help="emit a public challenge plus withheld answer")
    add_ring(p)
    add_seed(p)
    p.add_argument("--protocol", choices=("exchange", "three-pass"), default="exchange")
    p.add_argument("--dL", type=int, default=50)
    p.add_argument("--dPQ", type=int, default=5)
    p.add_argument("--nu", type=int, default=10)
    p.add_argument("--out-prefix", required=True)
    p.set_defaults(func=cmd_challenge)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (NotDivisibleError, EncodingError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ProtocolError, ResampleExhaustedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ParseError, OreKexError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
