"""
Running the verification suites
===============================

"""

import io

from padic_arrangements.cli import main
from padic_arrangements.harness import run_suite

# Library entry point: a report object with deterministic JSON.
report = run_suite("torus", {"t_max": 5})
print(report.to_text())
print("same JSON twice:", report.to_json() == run_suite("torus", {"t_max": 5}).to_json())

# The command line front end takes the same route and returns an exit code.
buf = io.StringIO()
code = main(["verify-all", "--suite", "cech", "--format", "text"], out=buf)
print(buf.getvalue().splitlines()[-1], "exit code", code)

buf = io.StringIO()
main(["rank", "--p", "3", "--n", "4", "--members", "1,0,0;1,9,0"], out=buf)
print(buf.getvalue())
