"""Greedy and Clarke-Wright TSP heuristics on their worst-case instance families."""
from .certificates import Verdict, certificate_stats, verify_cw_run, verify_greedy_run
from .exact import OptResult, brute_force, family_opt, held_karp
from .heuristics import TieBreak, Tour, clarke_wright, greedy_tour, savings
from .instances import (Certificate, GkMeta, HubMeta, cw_certificate, gen_cw_instance, gen_gk,
                        gen_one_two, gk_certificate, one_two_certificate)
from .metrics import (GridPoint, Instance, Metric, graphic_all_pairs, validate_gk_conditions,
                      validate_metric)
from .tsplib import read_certificate, read_tsplib, write_certificate, write_tsplib

__version__ = "0.1.0"
