"""Pydantic schemas for command reports."""

from app.schemas.report import Report, ReportError

__all__ = ["Report", "ReportError"]
