# Let's Do. | CanoPhase – Validierungsmodul
