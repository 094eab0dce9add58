"""Pydantic records: instances, outcomes, calibration, reports, requests."""
