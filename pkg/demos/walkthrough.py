"""Model -> pair -> criterion -> reconstruction for sigma = z^2, then a pair that is not an oper.

    python3 demos/walkthrough.py
"""

from branchoper import branched as br
from branchoper.jets import ADAPTED
from branchoper.pairfile import dumps

sigma = "z^2"
model = br.build_sl2_model(sigma)
pair = br.build_pair(model, ADAPTED)
print("pair built from", sigma)
print(dumps(pair))

cond = br.pair_conditions(pair)
print("pair conditions:", cond.all())
print("phi at 0:", br.phi_obstruction(pair, 0, "ledger").value, "/", br.phi_obstruction(pair, 0, "residue").value)
print("branched oper:", br.oper_criterion(pair).is_branched_oper)

rec = br.reconstruct_oper(pair)
print("residue spectra across the two modifications:", rec.spectra[0])
rt = br.roundtrip_check(model, pair, rec)
print("round trip:", rt.ok)
print("frame change at 0:", rt.frame)

bad = br.perturbed_pair(1, sigma, ADAPTED)
print()
print("perturbed pair: conditions", br.pair_conditions(bad).all(),
      "phi", br.phi_obstruction(bad, 0).value,
      "branched oper", br.oper_criterion(bad).is_branched_oper,
      "trivial monodromy", br.monodromy_trivial(bad))
