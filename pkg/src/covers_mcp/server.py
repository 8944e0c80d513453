#!/usr/bin/env python3
"""
covers-mcp server - main entry point
"""


def main():
    """Main entry point for the MCP server."""
    import sys
    if len(sys.argv) > 1 and sys.argv[1] in ("--version", "-V"):
        from covers_mcp import __version__  # noqa: PLC0415 (works when installed or via src layout)
        print(f"covers-mcp {__version__}")
        sys.exit(0)
    from covers_mcp.server_impl import main as server_main
    server_main()


if __name__ == "__main__":
    main()
