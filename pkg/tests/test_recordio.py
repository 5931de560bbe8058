"""Tests for the record-file and report-file formats."""

from __future__ import annotations

import io
import json

import pytest

from stabrenyi.estimator import ExperimentData, ShotRecord, estimate, simulate_experiment
from stabrenyi.fitting import NoiseFit
from stabrenyi.recordio import (
    BIT_ORDER,
    RecordFormatError,
    noise_fit_section,
    read_records,
    read_report,
    report_from_estimate,
    write_records,
    write_report,
)
from stabrenyi.states import gamma_state


def _sample_data(seed=4) -> ExperimentData:
    return simulate_experiment(
        gamma_state(2, 3), 3, 16, seed=seed, state_label="gamma-2-3"
    )


class TestRecordRoundTrip:
    def test_lossless_through_file(self, tmp_path):
        data = _sample_data()
        path = tmp_path / "records.jsonl"
        write_records(data, path)
        assert read_records(path) == data

    def test_lossless_through_stream(self):
        data = _sample_data()
        buf = io.StringIO()
        write_records(data, buf)
        buf.seek(0)
        assert read_records(buf) == data

    def test_seed_round_trips(self):
        data = _sample_data(seed=123)
        buf = io.StringIO()
        write_records(data, buf)
        header = json.loads(buf.getvalue().splitlines()[0])
        assert header["seed"] == 123
        buf.seek(0)
        assert read_records(buf).seed == 123

    def test_omitted_seed_reads_as_none(self):
        data = ExperimentData(
            n=1,
            state_label="custom",
            records=(ShotRecord(clifford_ids=(0,), counts={"0": 4}),),
        )
        buf = io.StringIO()
        write_records(data, buf)
        assert "seed" not in json.loads(buf.getvalue().splitlines()[0])
        buf.seek(0)
        assert read_records(buf).seed is None

    def test_header_fields(self):
        buf = io.StringIO()
        write_records(_sample_data(), buf)
        header = json.loads(buf.getvalue().splitlines()[0])
        assert header["format"] == "rm-records"
        assert header["format_version"] == 1
        assert header["bit_order"] == BIT_ORDER == "msb-first"
        assert header["n"] == 2
        assert header["state_label"] == "gamma-2-3"

    def test_blank_lines_tolerated(self):
        buf = io.StringIO()
        write_records(_sample_data(), buf)
        padded = "\n" + buf.getvalue().replace("\n", "\n\n")
        assert read_records(io.StringIO(padded)) == _sample_data()


class TestRecordErrors:
    def _lines(self):
        buf = io.StringIO()
        write_records(_sample_data(), buf)
        return buf.getvalue().splitlines()

    def _expect(self, text, fragment):
        with pytest.raises(RecordFormatError) as err:
            read_records(io.StringIO(text))
        assert fragment in str(err.value)

    def test_empty_file(self):
        self._expect("", "empty file")
        self._expect("\n\n", "empty file")

    def test_header_only(self):
        self._expect(self._lines()[0] + "\n", "no records after the header")

    def test_wrong_format_tag(self):
        self._expect('{"format": "csv"}\n', "line 1")

    def test_wrong_version(self):
        header = json.loads(self._lines()[0])
        header["format_version"] = 99
        self._expect(json.dumps(header) + "\n", "format_version")

    def test_wrong_bit_order(self):
        header = json.loads(self._lines()[0])
        header["bit_order"] = "lsb-first"
        self._expect(json.dumps(header) + "\n", "bit_order")

    def test_bad_n(self):
        header = json.loads(self._lines()[0])
        header["n"] = "three"
        self._expect(json.dumps(header) + "\n", "n must be a positive integer")

    def test_bad_state_label(self):
        header = json.loads(self._lines()[0])
        header["state_label"] = ""
        self._expect(json.dumps(header) + "\n", "state_label")

    def test_bad_seed(self):
        header = json.loads(self._lines()[0])
        header["seed"] = "abc"
        self._expect(json.dumps(header) + "\n", "seed must be an integer")

    def test_invalid_json_line_numbered(self):
        lines = self._lines()
        lines[2] = "{not json"
        self._expect("\n".join(lines), "line 3: invalid JSON")

    def test_record_extra_key(self):
        lines = self._lines()
        rec = json.loads(lines[1])
        rec["comment"] = "hi"
        lines[1] = json.dumps(rec)
        self._expect("\n".join(lines), "line 2")

    def test_record_missing_counts(self):
        lines = self._lines()
        lines[1] = '{"clifford_ids": [0, 1]}'
        self._expect("\n".join(lines), "exactly clifford_ids and counts")

    def test_word_length_mismatch(self):
        lines = self._lines()
        lines[1] = '{"clifford_ids": [0], "counts": {"0": 4}}'
        self._expect("\n".join(lines), "line 2")

    def test_invalid_counts_wrapped_with_line(self):
        lines = self._lines()
        lines[1] = '{"clifford_ids": [0, 1], "counts": {"00": -2}}'
        self._expect("\n".join(lines), "line 2")

    def test_non_object_line(self):
        lines = self._lines()
        lines[1] = "[1, 2, 3]"
        self._expect("\n".join(lines), "expected a JSON object")


class TestReports:
    def _doc(self, verbose=False):
        report = estimate(_sample_data(), method="ustat")
        return report_from_estimate(
            report, "gamma-2-3", seed=4, verbose=verbose
        )

    def test_document_fields(self):
        doc = self._doc()
        assert doc["format"] == "rm-report"
        assert doc["n"] == 2
        assert doc["method"] == "ustat"
        assert doc["seed"] == 4
        assert doc["resources"]["n_units"] == 3
        assert doc["resources"]["total_shots"] == 48
        assert set(doc["estimates"]) == {
            "stab_purity",
            "stab_purity_err",
            "purity",
            "purity_err",
            "stab_renyi2",
            "stab_renyi2_err",
            "negative_stab_purity",
        }
        assert "per_word" not in doc

    def test_verbose_includes_per_word(self):
        doc = self._doc(verbose=True)
        assert len(doc["per_word"]["stab_purity"]) == 3
        assert len(doc["per_word"]["purity"]) == 3

    def test_round_trip_lossless(self, tmp_path):
        doc = self._doc(verbose=True)
        path = tmp_path / "report.json"
        write_report(doc, path)
        assert read_report(path) == doc

    def test_stream_round_trip(self):
        doc = self._doc()
        buf = io.StringIO()
        write_report(doc, buf)
        buf.seek(0)
        assert read_report(buf) == doc

    def test_rejects_non_report(self):
        with pytest.raises(RecordFormatError):
            read_report(io.StringIO('{"format": "rm-records"}'))
        with pytest.raises(RecordFormatError):
            read_report(io.StringIO("[1, 2]"))

    def test_invalid_json_line_numbered(self):
        with pytest.raises(RecordFormatError) as err:
            read_report(io.StringIO('{"format": "rm-report",\n  broken'))
        assert "line 2" in str(err.value)

    def test_noise_fit_section(self):
        fit = NoiseFit(
            p=0.9, p_err=0.01, q=0.95, q_err=None, epsilon=0.2, epsilon_err=0.03
        )
        section = noise_fit_section(fit)
        assert section == {
            "p": 0.9,
            "p_err": 0.01,
            "q": 0.95,
            "q_err": None,
            "epsilon": 0.2,
            "epsilon_err": 0.03,
        }
        # the section must be JSON-serializable as-is
        json.dumps(section)
