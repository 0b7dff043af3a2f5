import os
import sys

# Reports print Γ, η and box-drawing characters
os.environ.setdefault("PYTHONIOENCODING", "utf-8")
for stream in (sys.stdout, sys.stderr):
    if hasattr(stream, "reconfigure"):
        stream.reconfigure(encoding="utf-8", errors="replace")

from fourierlcu.cli import main  # noqa: E402

if __name__ == "__main__":
    main()
