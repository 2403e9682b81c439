from Space.space_graph import (SiteGeometry, SpaceGraph, build_space, junction_bonds, dump_graph_csv, graph_csv_bytes,
                               coordinate_window, JUNCTION_SHEET)
