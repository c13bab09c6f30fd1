"""Regression constants recorded once from the brute-force/BFS oracle runs.

These freeze measured values; they are not claims beyond the corpus.
"""

# max over the covering corpus of cn * log|C| / log|G|; attained by the
# smallest noncentral classes of SL(2,5) (size 12, covering number 5)
PINNED_COVER_RATIO = 2.595207243474015

# per-alpha max covering number over the covering corpus
PINNED_C_ALPHA = {4: 3, 5: 5, 6: 3, 7: 3, 8: 4}

# per-group covering numbers over all noncentral classes (sorted)
PINNED_COVERING_NUMBERS = {
    "A_5": [2, 2, 3, 3],
    "A_6": [2, 2, 2, 2, 3, 3],
    "A_7": [2, 2, 2, 2, 3, 3, 3, 3],
    "A_8": [2, 2, 2, 2, 2, 3, 3, 3, 3, 3, 3, 4, 4],
    "PSL(2,7)": [2, 2, 3, 3, 3],
    "PSL(2,11)": [2, 2, 2, 2, 3, 3, 3],
    "PSL(2,13)": [2, 2, 2, 2, 2, 2, 3, 3],
    "SL(2,5)": [2, 3, 3, 5, 5, 5, 5],
}

# largest soluble-width minimum observed across the soluble corpus sweep
# (S_4 with its standard generating pairs needs 2; everything else <= 1)
PINNED_SOLUBLE_WIDTH_MAX = 2

# acceptable-width maxima keyed by (d, alpha), recorded by the corpus sweep
PINNED_ACCEPTABLE_WIDTH = {
    (1, 0): 0, (1, 3): 0,
    (2, 0): 1, (2, 3): 1, (2, 4): 2, (2, 5): 0, (2, 6): 0,
    (3, 3): 1, (3, 4): 1, (3, 5): 0,
    (4, 4): 1,
}

# central-product width for the swap on two copies of SL(2,5)
PINNED_QSIMPLE_SWAP_SL25 = 2

# inner widths for the generator pairs used in the tests
PINNED_INNER_SL25 = 2
PINNED_INNER_A5 = 2

# floor of log|C|/log|G| over nonidentity classes, fixed-rank PSL(2,p) family
PINNED_BOUNDED_RANK_FLOOR = 0.55
