"""One-shot orchestration: run a subset of suites, collect every check
as a claim, and render the machine-readable report.

This is what the `verify run` command does; calling it as a library
gives the same report dictionary for further processing.
"""

import json

from pentangle import report as rp

config = rp.make_config(primes=(31,), a_values="auto", seed=42,
                        suites=("heisenberg", "lattice", "scan",
                                "secants"))
print("resolved (prime, modulus) pairs:", rp.resolve_pairs(config))
print("suite execution order:", config.suites)
print()

report = rp.run(config)

# the claim list is flat; each claim is one named check with a witness
for claim in report["claims"][:6]:
    print(json.dumps({k: claim[k] for k in ("id", "status", "witness")},
                     indent=2))

print()
print("summary:", report["summary"])
print("exit status (CI semantics):", rp.exit_status(report))

# the same report renders as markdown for human eyes
markdown = rp.render_report(report, "markdown")
print()
print("\n".join(markdown.splitlines()[:12]))
