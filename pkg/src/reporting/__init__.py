"""Reporting helpers (CSV and JSON-lines tables)."""

from .export import write_csv, write_jsonl, write_json, to_json_line, window_sweep_frame, WINDOW_SWEEP_COLUMNS

__all__ = ["write_csv", "write_jsonl", "write_json", "to_json_line", "window_sweep_frame", "WINDOW_SWEEP_COLUMNS"]
