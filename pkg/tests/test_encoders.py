import numpy as np
import pytest

from fcc.bits import BitVector, hamming_distance
from fcc.codesearch import BlockCode, repetition_code_4, search_N_uniform
from fcc.encoders import (
    AmbiguousDecode,
    FccEncoder,
    build_from_dcode,
    build_generic,
    build_hwdf_mod_a,
    build_hwdf_parity,
    build_lambda4,
    decode_function,
    encoder_from_descriptor,
    encoder_to_descriptor,
    hwdf_window,
    load_encoder,
    save_encoder,
)
from fcc.errors import (
    ContiguityViolation,
    DistanceRequirementViolation,
    InvalidParityCode,
    LambdaTooLarge,
    LengthMismatch,
    ThresholdOutOfRange,
)
from fcc.funcspace import (
    constant_function,
    lexicographic_rearrangement,
    table_function,
    weight_distribution,
    weight_function,
)

import oracles

OR2_WORDS = ["00", "11", "11", "01"]
MSGS2 = ["00", "01", "10", "11"]


def enc_str(enc, u):
    return str(enc.encode(u))


def test_lambda4_weight_function():
    enc = build_lambda4(weight_function(3), 1)
    assert enc.r == 3
    assert enc_str(enc, "000") == "000" + "000"
    assert enc_str(enc, "110") == "110" + "101"
    assert hamming_distance(enc.encode("000"), enc.encode("100")) == 3


def test_lambda4_or2(or2):
    enc = build_lambda4(or2, 1)
    assert enc_str(enc, "00") == "00000"
    assert enc_str(enc, "01") == "01110"


def test_lambda4_repeats_table_row_t_times():
    enc = build_lambda4(weight_distribution(6, 2), 2)
    assert enc.r == 6
    # weight 2 -> value 1 -> colour 2 -> 110 repeated twice
    assert str(enc.parity("110000")) == "110110"


def test_lambda4_rejects():
    with pytest.raises(LambdaTooLarge):
        build_lambda4(weight_function(5), 1)
    # ball of 000 at radius 2 is {A, C}, skipping B
    bad = table_function(3, ["A", "B", "C"], ["A", "C", "A", "A", "A", "A", "A", "B"])
    with pytest.raises(ContiguityViolation):
        build_lambda4(bad, 1)


def test_generic_locally_binary():
    f = weight_distribution(6, 5)
    enc = build_generic(f, 1, BlockCode.from_strings(["00", "11"]))
    assert enc.r == 2 == 2 * 1
    assert enc.extra["lambda"] == 2


def test_generic_matches_lambda4_with_same_code():
    f = weight_function(3)
    g = build_generic(f, 1, repetition_code_4(1))
    h = build_lambda4(f, 1)
    assert (g.codebook() == h.codebook()).all()


def test_generic_constant_function():
    enc = build_generic(constant_function(3), 2, BlockCode(0, (BitVector(0, 0),)))
    assert enc.r == 0
    assert enc_str(enc, "101") == "101"


def test_generic_auto_uses_shortest_code():
    f = weight_distribution(8, 3)
    enc = build_generic(f, 1)
    assert enc.extra["lambda"] == 3
    assert enc.r == search_N_uniform(3, 2).found_length == 3


def test_generic_rejects_bad_code():
    f = weight_function(3)
    with pytest.raises(InvalidParityCode):
        build_generic(f, 1, BlockCode.from_strings(["00", "11", "01"]))
    with pytest.raises(InvalidParityCode):
        build_generic(f, 1, BlockCode.from_strings(["000", "110", "101", "111"]))


def test_hwdf_parity():
    enc = build_hwdf_parity(5, 3, 1)
    assert enc.r == 2
    assert enc_str(enc, "11100") == "1110011"
    assert enc_str(enc, "00000") == "0000000"
    fn = lambda u: oracles.wt(u) // 3
    assert oracles.is_fcc(fn, 1, 5, lambda u: enc_str(enc, u))


@pytest.mark.parametrize("T, t", [(2, 1), (5, 1), (4, 2), (9, 2)])
def test_hwdf_parity_window(T, t):
    with pytest.raises(ThresholdOutOfRange):
        build_hwdf_parity(6, T, t)


@pytest.mark.parametrize("T, t, m, a", [(1, 1, 5, 4), (2, 1, 3, 3), (4, 1, 2, 2), (3, 1, 2, 2),
                                        (1, 2, 9, 6), (2, 2, 5, 4), (3, 2, 3, 3), (8, 2, 2, 2)])
def test_hwdf_window(T, t, m, a):
    assert hwdf_window(T, t) == (m, a)
    assert 4 * t * 1.0 / (m - 1) >= T > 4 * t / m


def test_hwdf_mod_a_examples():
    enc = build_hwdf_mod_a(5, 1, 1)
    assert enc.extra == {"m": 5, "a": 4}
    assert [str(w) for w in enc.parity_words] == ["000", "110", "101", "011"]
    assert enc_str(enc, "10110") == "10110" + "011"
    enc = build_hwdf_mod_a(6, 2, 1)
    assert enc.extra == {"m": 3, "a": 3} and enc.r == 3
    enc = build_hwdf_mod_a(4, 4, 1)
    assert enc.extra == {"m": 2, "a": 2} and enc.r == 2


@pytest.mark.parametrize("t", [1, 2, 3])
def test_hwdf_mod_a_is_3t_between_t_and_2t_over_3(t):
    for T in range(1, t + 1):
        if T > 2 * t / 3:
            enc = build_hwdf_mod_a(6, T, t)
            assert enc.extra["m"] in (5, 6)
            assert enc.r == 3 * t


def test_hwdf_mod_a_redirects_large_threshold():
    with pytest.raises(ThresholdOutOfRange, match="build_generic"):
        build_hwdf_mod_a(8, 5, 1)


def test_dcode_or2(or2):
    enc = build_from_dcode(or2, 1, MSGS2, OR2_WORDS)
    assert sorted(enc_str(enc, u) for u in MSGS2) == ["0000", "0111", "1011", "1101"]


def test_dcode_t0_identity(or2):
    enc = build_from_dcode(or2, 0, MSGS2, [BitVector(0, 0)] * 4)
    assert enc.r == 0 and enc_str(enc, "10") == "10"


def test_dcode_violation(or2):
    with pytest.raises(DistanceRequirementViolation) as exc:
        build_from_dcode(or2, 1, MSGS2, ["00"] * 4)
    assert exc.value.pair == ("00", "01")
    assert (exc.value.required, exc.value.actual) == (2, 0)


def test_decode_function_or2(or2):
    enc = build_from_dcode(or2, 1, MSGS2, OR2_WORDS)
    assert decode_function(enc, "0100") == 0
    assert decode_function(enc, "0111") == 1
    for u in MSGS2:
        assert decode_function(enc, enc.encode(u)) == or2.index_of(u)
    with pytest.raises(LengthMismatch):
        decode_function(enc, "01")


def test_decode_reports_ambiguity():
    f = weight_function(2)
    enc = FccEncoder(f, 1, 0, "dcode", (BitVector(0, 0),) * 4)
    got = decode_function(enc, "01")
    assert got == 1
    enc = build_lambda4(weight_function(3), 1)
    # 000000 and 100110 are the codewords of weights 0 and 1, distance 3 apart
    got = decode_function(enc, "100000")
    assert isinstance(got, AmbiguousDecode) or got in (0, 1)


def _all_encoders():
    yield build_lambda4(weight_function(3), 1)
    yield build_lambda4(weight_distribution(7, 3), 2)
    yield build_lambda4(lexicographic_rearrangement(2), 1)
    yield build_generic(weight_distribution(8, 2), 1)
    yield build_hwdf_parity(6, 3, 1)
    yield build_hwdf_parity(7, 7, 2)
    yield build_hwdf_mod_a(5, 1, 1)
    yield build_hwdf_mod_a(6, 2, 2)


@pytest.mark.parametrize("enc", list(_all_encoders()), ids=lambda e: f"{e.strategy}-{e.f.describe()}-k{e.k}-t{e.t}")
def test_encoder_invariants(enc):
    k, r = enc.k, enc.r
    words = [BitVector(k, u) for u in range(1 << k)]
    code = {u: enc.encode(u) for u in words}
    for u in words:
        assert len(code[u]) == k + r
        assert code[u].prefix(k) == u
    for u in words[:16]:
        for v in words:
            assert hamming_distance(code[u], code[v]) == hamming_distance(u, v) + hamming_distance(
                enc.parity(u), enc.parity(v))
    # central property, by the independent oracle
    fn = lambda s: enc.f.index_of(s)
    assert oracles.is_fcc(fn, enc.t, k, lambda s: str(code[BitVector.from_str(s)]))


def test_redundancy_accounting():
    assert build_lambda4(weight_function(3), 2).r == 6
    assert build_hwdf_parity(8, 5, 2).r == 4
    assert build_hwdf_mod_a(8, 2, 2).r == 6
    code = search_N_uniform(3, 4).witness
    assert build_generic(weight_distribution(8, 3), 2, code).r == code.length


def test_t_zero_everywhere(or2):
    assert build_lambda4(weight_function(3), 0).r == 0
    assert build_generic(weight_function(3), 0).r == 0


@pytest.mark.parametrize("enc", list(_all_encoders())[:5], ids=str)
def test_descriptor_round_trip(enc, tmp_path):
    p = tmp_path / "e.enc"
    save_encoder(enc, p)
    back = load_encoder(p)
    assert back.strategy == enc.strategy and back.r == enc.r
    assert (back.codebook() == enc.codebook()).all()


def test_descriptor_round_trip_dcode_and_table(or2):
    enc = build_from_dcode(or2, 1, MSGS2, OR2_WORDS)
    back = encoder_from_descriptor(encoder_to_descriptor(enc))
    assert (back.codebook() == enc.codebook()).all()
    assert back.f.labels == or2.labels
