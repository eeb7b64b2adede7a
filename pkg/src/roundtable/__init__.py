"""Roundtable: a role-gated collaborative news-commenting system.

Users hold one of three capability levels. Everyone comments; LV0 users
propose comment clusters by drag-and-drop, LV1 users review those
proposals and summarize finalized clusters, LV2 users propose and review
new discussion threads. The package ships the discussion state machine,
AI-suggestion plumbing with a deterministic stub, quality metrics, an
event-sourced HTTP service, and a scenario replay harness.
"""

__version__ = "0.1.0"
