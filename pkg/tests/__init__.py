"""
Covers MCP Test Suite

Three-tier testing architecture:

1. server_implementation/  - MCP server layer tests with fastmcp.Client
2. server_intelligence/    - Exhaustive sweeps, scaling, space and adversary experiments
3. data_processing/        - Unit tests of the algorithm modules with isolated data

Run individual layers:
- python -m pytest tests/server_implementation/
- python -m pytest tests/server_intelligence/
- python -m pytest tests/data_processing/

Run all tests:
- python -m pytest tests/

The slow sweeps run at quick sizes by default. COVERS_MCP_FULL_ACCEPTANCE=1
switches them to acceptance sizes, and each COVERS_MCP_* size knob listed in
covers_mcp.config overrides one sweep.
"""
