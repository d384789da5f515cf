import math
import struct

import pytest

import rdmbench


def vendor_a(text):
    body = text.encode()
    return b"VNDA\x00\x01\x00\x00" + struct.pack("<I", len(body)) + body


def test_sha256_reference_vectors():
    assert rdmbench.sha256_hex(b"") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
    assert rdmbench.sha256_hex(b"abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"


def test_perm_ids_and_qr():
    assert rdmbench.is_valid_perm_id("20231204123456789-1")
    assert not rdmbench.is_valid_perm_id("20231304123456789-1")
    assert rdmbench.qr_payload("20231204123456789-1") == "rdm://object/20231204123456789-1"


def test_vendor_a_extraction():
    data = vendor_a("EHT = 20 kV\nWD = 10.1 mm\nEmissionCurrent = 1 A\n")
    assert rdmbench.detect_format(data) == "vendorA"
    result = rdmbench.extract_metadata(data)
    assert result["vendor"] == "vendorA"
    assert result["unified"]["acceleration_voltage"] == 20000.0
    assert "emission_current" not in result["unified"]
    assert len(result["warnings"]) == 1


def test_unknown_file_raises_with_code():
    with pytest.raises(rdmbench.RdmError) as info:
        rdmbench.extract_metadata(b"plain text")
    assert info.value.code == "PARSE"


def test_composition_validation():
    sample = {"type_name": "SAMPLE",
              "properties": {"location": "x", "dimensions_mm": [1, 1, 1],
                             "composition": {"Fe": 60, "Al": 40.0000009}}}
    assert rdmbench.validate(sample)["ok"]
    sample["properties"]["composition"]["Al"] = 40.0000011
    report = rdmbench.validate(sample)
    assert not report["ok"]
    assert report["violations"][0]["rule"] == "SUM_100"


def test_stress_strain_hand_fixture():
    csv = "time_s,displacement_nm,load_mN\n0,0,0\n1,50,1\n"
    curve = rdmbench.stress_strain(csv, diameter_top=1e-6, height=2e-6)
    strain, stress = curve["points"][1]
    assert abs(stress - 1.2732395e9) / 1.2732395e9 < 1e-6
    assert strain == pytest.approx(0.025)


def test_ipf_corners():
    assert rdmbench.ipf_color(0, 0, 0) == (255, 0, 0)
    assert rdmbench.ipf_color(0, math.pi / 4, 0) == (0, 255, 0)
    assert rdmbench.ipf_color(0, math.acos(1 / math.sqrt(3)), math.pi / 4) == (0, 0, 255)


def test_workbench_lifecycle(tmp_path):
    wb = rdmbench.Workbench(journal=tmp_path / "journal.jsonl", blob_root=tmp_path / "blobs")
    cast = wb.create_object({"type_name": "SAMPLE",
                             "properties": {"location": "x", "dimensions_mm": [5, 5, 5],
                                            "composition": {"Fe": 60, "Al": 40}}})
    piece = wb.create_object({"type_name": "SAMPLE",
                              "properties": {"location": "x", "dimensions_mm": [1, 1, 1]},
                              "parents": [cast]})
    geometry = "pillar_id,diameter_top_um,height_um\nMP1,2,5\n"
    entry = wb.create_object({"type_name": "MICRO_MECH_EXP",
                              "properties": {"title": "t", "pillar_geometry": geometry},
                              "parents": [piece]})
    load = b"time_s,displacement_nm,load_mN\n0,0,0\n1,10,0.5\n2,20,1.0\n"
    ds = wb.ingest(entry, load, "LOAD_DISPLACEMENT", format="none", filename="MP1.csv")
    assert ds["owner_entry"] == entry

    with pytest.raises(rdmbench.RdmError) as info:
        wb.link(piece, cast)
    assert info.value.code == "CYCLE"

    first = wb.tick()
    assert [len(o["produced_datasets"]) for o in first if not o["skipped"]] == [2]
    assert all(o["skipped"] for o in wb.tick())

    up = wb.graph(entry, direction="up")
    assert cast in {n["id"] for n in up["nodes"]}
    assert {n["id"] for n in wb.filter_by_element("Fe")["nodes"]} >= {cast, piece, entry}
    assert wb.graph_dot(cast).startswith("digraph")

    figure = next(o for o in first if not o["skipped"])["produced_datasets"][0]
    png = wb.preview(figure)
    assert png is not None and png.startswith(b"\x89PNG")

    reopened = rdmbench.Workbench(journal=tmp_path / "journal.jsonl", blob_root=tmp_path / "blobs")
    assert reopened.get_object(piece)["parents"] == [cast]


def test_invalid_record_carries_violations(tmp_path):
    wb = rdmbench.Workbench(blob_root=tmp_path / "blobs")
    with pytest.raises(rdmbench.RdmError) as info:
        wb.create_object({"type_name": "SAMPLE", "properties": {"location": "x"}})
    assert info.value.code == "VALIDATION"
    assert info.value.violations[0]["rule"] == "REQUIRED"
