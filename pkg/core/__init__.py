# Let's Do. | CanoPhase – Core-Modul
