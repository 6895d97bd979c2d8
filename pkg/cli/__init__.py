# Let's Do. | CanoPhase – CLI-Modul
