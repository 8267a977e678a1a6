"""Closed forms, grid searches, property checks and proof witnesses."""
