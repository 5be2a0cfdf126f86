import json

import pytest

import wvss


@pytest.fixture(scope="module")
def params():
    return wvss.derive_params([10, 10], seed="py")


@pytest.fixture(scope="module")
def deal(params):
    return wvss.share(params, 123456789, seed="py-deal")


def test_derive_ten_ten(params):
    assert params.amplification == 29
    assert params.n == 6
    assert params.T_rec == 580
    assert params.m == 1
    assert params.t_priv < params.T_rec <= params.total_bits
    assert len(params.primes) == params.n
    assert wvss.weight_cap() == 126


def test_params_json_round_trip(params):
    again = wvss.Params.from_json(params.to_json())
    assert again.primes == params.primes
    assert json.loads(again.to_json()) == json.loads(params.to_json())


def test_share_verify_reconstruct(params, deal):
    blob, openings = deal
    assert len(openings) == params.n
    for party in (1, 2):
        mine = [openings[i - 1] for i in params.share_ids_of(party)]
        assert wvss.verify(params, blob, mine) == "Accept"
    assert wvss.reconstruct(params, blob, openings) == 123456789
    for o in openings:
        assert o.s % params.primes[o.index - 1] == o.s


def test_unauthorized_set(params, deal):
    blob, openings = deal
    one_party = [openings[i - 1] for i in params.share_ids_of(1)]
    with pytest.raises(wvss.WvssError) as err:
        wvss.reconstruct(params, blob, one_party)
    assert err.value.args[1] == "Unauthorized"


def test_tampered_deal_rejected(params, deal):
    blob, openings = deal
    bad = bytearray(blob)
    bad[-1] ^= 1
    try:
        verdict = wvss.verify(params, bytes(bad))
    except wvss.WvssError as e:
        assert e.args[1] == "MalformedProof"
    else:
        assert verdict == "ProofInvalid"


def test_openings_json(deal):
    _, openings = deal
    text = wvss.openings_to_json(openings)
    back = wvss.openings_from_json(text)
    assert [o.index for o in back] == [o.index for o in openings]
    assert [o.s for o in back] == [o.s for o in openings]


def test_secrecy_distance_toy():
    d = wvss.secrecy_distance(11, [5, 7], 1000, 1, 2, [1])
    assert 0 <= d < 0.01
    assert wvss.secrecy_distance(11, [5, 7], 1, 1, 2, [1]) == 1.0


def test_bad_inputs():
    with pytest.raises(wvss.WvssError):
        wvss.derive_params([0, 3])
    with pytest.raises(wvss.WvssError):
        wvss.share(wvss.derive_params([10, 10], seed="x"), wvss.group_order())
