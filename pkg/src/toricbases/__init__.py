"""Toric bases of graphs: Graver, circuits, universal Groebner and Markov bases."""
