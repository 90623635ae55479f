"""HTTP service layer: pydantic schemas, handlers, FastAPI app factory."""
