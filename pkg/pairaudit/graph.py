"""
This class builds a NetworkX graph from the heaps of a
:class:`pairaudit.PairingForest`.

Nodes of the graph are the heap nodes and edges go from a general-tree
parent to each of its children, with the position of the child among its
siblings. When colors are given, every node also carries the components of
its potential. The graph can be saved in formats used by graph
visualization software, such as GEXF or GraphML.

.. autoclass:: pairaudit.HeapGraph
    :members:

"""

import logging

import networkx as nx

from pairaudit.audit.potential import HeapState, white_handles, WHITE, BLACK
from pairaudit.utils.files import get_file_format


# Create logger and set configuration
logger = logging.getLogger(__file__)
log_handler = logging.StreamHandler()
log_handler.setFormatter(logging.Formatter("[%(asctime)s] pairaudit.graph -"
                                           " %(levelname)s: %(message)s"))
logger.addHandler(log_handler)
logger.propagate = False


class HeapGraph(object):
    """
    Directed graph of the general trees of a forest of pairing heaps.

    Parameters
    ----------
    forest : PairingForest
        Forest to represent.
    colors : dict, optional
        Forest node handle to 'white' or 'black'. If given, the potential
        components are added as node attributes.
        Default: None
    name : callable, optional
        Maps forest node handles to graph node ids (for example trace ids).
        If None, handles are used.
        Default: None
    heap_name : callable, optional
        Maps forest heap ids to the value of the `heap` attribute.
        Default: None

    Attributes
    ----------
    graph : nx.DiGraph
        The graph. Node attributes are `key`, `heap`, `root` and, with
        colors, `color`, `s`, `rank`, `heavy`, `captured`, `triple_white`
        and `potential`. Edge attribute `position` is the 0-based position
        of the child from the left.
    """

    def __init__(self, forest, colors=None, name=None, heap_name=None):
        self._name = name if name is not None else (lambda handle: handle)
        self._heap_name = heap_name if heap_name is not None \
            else (lambda heap_id: heap_id)
        self.graph = self._build_graph(forest, colors)

    def _build_graph(self, forest, colors):
        graph = nx.DiGraph()
        name = self._name
        white = white_handles(colors) if colors is not None else None

        for heap_id in forest.heap_ids():
            heap_label = self._heap_name(heap_id)
            root = forest.root(heap_id)
            annotations = {}
            if white is not None:
                annotations = HeapState(heap_id, root, white).annotations()
            for node in forest.nodes(heap_id):
                data = {'key': node.key,
                        'heap': heap_label,
                        'root': node is root}
                annotation = annotations.get(node.handle)
                if annotation is not None:
                    data.update(color=WHITE if annotation.white else BLACK,
                                s=annotation.s,
                                rank=annotation.rank,
                                heavy=annotation.heavy,
                                captured=annotation.captured,
                                triple_white=annotation.triple_white,
                                potential=annotation.potential)
                graph.add_node(name(node.handle), **data)
                for position, child in enumerate(node.children()):
                    graph.add_edge(name(node.handle), name(child.handle),
                                   position=position)
        logger.debug("heap graph with %d nodes in %d heaps",
                     graph.number_of_nodes(), len(forest.heap_ids()))
        return graph

    def depth(self):
        """ Largest number of edges on a root-to-leaf path, -1 if empty. """
        depth = -1
        for component in nx.weakly_connected_components(self.graph):
            subgraph = self.graph.subgraph(component)
            depth = max(depth, nx.dag_longest_path_length(subgraph))
        return depth

    def save_gexf(self, file_name):
        """
        Writes the current heap graph as a GEXF file.
        """
        nx.write_gexf(self.graph, file_name)

    def save_graphml(self, file_name):
        """
        Writes the current heap graph as a GraphML file.
        """
        nx.write_graphml(self.graph, file_name)

    def save(self, file_name):
        """
        Writes the graph in the format given by the extension of
        `file_name`.

        Raises
        ------
        ValueError
            If the extension is not '.gexf' or '.graphml'.
        """
        file_format = get_file_format(file_name)
        if file_format == "gexf":
            self.save_gexf(file_name)
        elif file_format == "graphml":
            self.save_graphml(file_name)
        else:
            raise ValueError("Unknown graph format. Please provide an output "
                             "file with either '.gexf' or '.graphml' "
                             "extension")
