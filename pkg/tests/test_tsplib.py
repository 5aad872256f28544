import numpy as np
import pytest

from tsplab import (gen_cw_instance, gen_gk, gen_one_two, gk_certificate, read_certificate,
                    read_tsplib, write_certificate, write_tsplib)
from tsplab.tsplib import TsplibError


@pytest.mark.parametrize("kind", ["l1", "l2", "lp:3", "graphic"])
def test_roundtrip_grid(kind):
    inst, _ = gen_gk(1, kind)
    back = read_tsplib(write_tsplib(inst))
    np.testing.assert_array_equal(back.key_matrix, inst.key_matrix)
    assert back.name == inst.name


def test_roundtrip_keeps_scale():
    inst, _, _ = gen_cw_instance(0)
    text = write_tsplib(inst)
    assert "COMMENT SCALE=2" in text
    back = read_tsplib(text)
    assert back.metric.scale == 2
    np.testing.assert_array_equal(back.key_matrix, inst.key_matrix)


def test_l1_header_layout():
    inst, _ = gen_gk(0, "l1")
    lines = write_tsplib(inst).splitlines()
    assert lines[:6] == ["NAME: gk0_l1", "TYPE: TSP", "COMMENT SCALE=1", "COMMENT LP=1",
                         "DIMENSION: 8", "EDGE_WEIGHT_TYPE: MAN_2D"]
    assert lines[6] == "NODE_COORD_SECTION"
    assert lines[7] == "1 0 0"
    assert lines[-1] == "EOF"


def test_explicit_layout():
    text = write_tsplib(gen_one_two(5))
    assert "EDGE_WEIGHT_TYPE: EXPLICIT" in text
    assert "EDGE_WEIGHT_FORMAT: FULL_MATRIX" in text
    assert "0 1 1 2 1" in text


def test_truncated_file_names_section():
    text = write_tsplib(gen_gk(0, "l1")[0])
    cut = text[: text.index("NODE_COORD_SECTION")]
    with pytest.raises(TsplibError, match="NODE_COORD_SECTION"):
        read_tsplib(cut)
    partial = "\n".join(text.splitlines()[:10])
    with pytest.raises(TsplibError, match="NODE_COORD_SECTION truncated"):
        read_tsplib(partial)
    explicit = write_tsplib(gen_one_two(5)).splitlines()
    with pytest.raises(TsplibError, match="EDGE_WEIGHT_SECTION"):
        read_tsplib("\n".join(explicit[:-3]))


def test_unknown_section_rejected():
    text = write_tsplib(gen_gk(0, "l1")[0]).replace("EOF", "DISPLAY_DATA_SECTION\n1 0 0\nEOF")
    with pytest.raises(TsplibError, match="DISPLAY_DATA_SECTION"):
        read_tsplib(text)


def test_header_errors():
    base = write_tsplib(gen_one_two(5))
    with pytest.raises(TsplibError, match="missing DIMENSION"):
        read_tsplib(base.replace("DIMENSION: 5\n", ""))
    with pytest.raises(TsplibError, match="TYPE"):
        read_tsplib(base.replace("TYPE: TSP", "TYPE: ATSP"))
    with pytest.raises(TsplibError, match="EDGE_WEIGHT_TYPE"):
        read_tsplib(base.replace("EXPLICIT", "GEO"))
    with pytest.raises(TsplibError, match="EDGE_WEIGHT_FORMAT"):
        read_tsplib(base.replace("FULL_MATRIX", "UPPER_ROW"))
    with pytest.raises(TsplibError, match="malformed DIMENSION"):
        read_tsplib(base.replace("DIMENSION: 5", "DIMENSION: five"))


def test_non_symmetric_matrix_rejected():
    text = write_tsplib(gen_one_two(5)).replace("0 1 1 2 1", "0 2 1 2 1", 1)
    with pytest.raises(TsplibError, match="symmetric"):
        read_tsplib(text)


def test_lp_comment_overrides_euc():
    inst, _ = gen_gk(0, "lp:3")
    text = write_tsplib(inst)
    assert "EDGE_WEIGHT_TYPE: EUC_2D" in text and "COMMENT LP=3" in text
    assert read_tsplib(text).metric.p == 3
    assert read_tsplib(text.replace("COMMENT LP=3\n", "")).metric.p == 2
    with pytest.raises(TsplibError):
        read_tsplib(text.replace("EUC_2D", "MAN_2D"))


def test_colon_comment_accepted():
    text = write_tsplib(gen_cw_instance(0)[0]).replace("COMMENT SCALE=2", "COMMENT : SCALE=2")
    assert read_tsplib(text).metric.scale == 2


def test_certificate_roundtrip():
    cert = gk_certificate(1)
    text = write_certificate(cert)
    assert text.splitlines()[0] == "FAMILY gk 1 29"
    assert read_certificate(text) == cert


def test_certificate_parse_errors():
    with pytest.raises(TsplibError):
        read_certificate("")
    with pytest.raises(TsplibError):
        read_certificate("FAMILY gk 1\n0 1\n")
    with pytest.raises(TsplibError):
        read_certificate("FAMILY foo 1 2\n")
    with pytest.raises(TsplibError):
        read_certificate("FAMILY gk 1 29\n0 1 2\n")
