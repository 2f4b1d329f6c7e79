#!/usr/bin/env python3
"""SG-WLS CLI entry point."""

from cli.cli import app

if __name__ == "__main__":
    app()
