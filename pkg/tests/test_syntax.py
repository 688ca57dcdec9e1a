"""Syntax trees: shapes, parse failures, subtree extraction."""

from codescore.syntax import Ast, extract_subtrees, parse_ast, subtree_match

CARD_CLASS = '''class Archmage(MinionCard ) :
    def __init__ (self) :
        super().__init__("Archmage", 6,
        CHARACTER_CLASS.ALL, CARD_RARITY.COMMON)

    def create_minion (self, player) :
        return Minion(4, 7, spell_damage = 1)
'''


def test_assignment_tree_shape():
    tree = parse_ast("x=1")
    assert tree.label == "Module"
    (assign,) = tree.children
    assert assign.label == "Assign"
    assert [c.label for c in assign.children] == ["Name", "Constant"]
    assert assign.children[0].value == "x"
    assert assign.children[1].value == "1"


def test_invalid_code_returns_none():
    assert parse_ast("for x in") is None
    assert parse_ast("def f(:") is None


def test_empty_module_parses():
    tree = parse_ast("")
    assert tree is not None and tree.label == "Module"


def test_full_class_snippet_parses():
    tree = parse_ast(CARD_CLASS)
    assert tree is not None
    labels = {node.label for node in tree.iter_nodes()}
    assert "ClassDef" in labels and "FunctionDef" in labels


def test_single_node_tree_yields_one_subtree():
    tree = Ast("leaf")
    assert sum(extract_subtrees(tree).values()) == 1


def test_leaf_values_are_disregarded():
    t1 = parse_ast("x = 1")
    t2 = parse_ast("y = 2")
    assert extract_subtrees(t1) == extract_subtrees(t2)


def test_three_node_chain_has_three_subtrees():
    chain = Ast("a", (Ast("b", (Ast("c"),)),))
    counts = extract_subtrees(chain)
    assert sum(counts.values()) == 3
    assert set(counts) == {"(c)", "(b (c))", "(a (b (c)))"}


def test_subtree_match_counts():
    ref = extract_subtrees(parse_ast("x = 1\ny = 2"))
    cand = extract_subtrees(parse_ast("z = 3"))
    matched, total = subtree_match(ref, cand)
    # candidate: Module, Assign, Name, Constant = 4 subtrees; all but the
    # single-assignment Module shape occur in the reference
    assert total == sum(ref.values())
    assert matched == 3


def test_identical_snippets_full_match():
    ref = extract_subtrees(parse_ast(CARD_CLASS))
    matched, total = subtree_match(ref, ref)
    assert matched == sum(ref.values()) and total == matched


def test_structure_distinguishes_operators():
    add = extract_subtrees(parse_ast("a + b"))
    sub = extract_subtrees(parse_ast("a - b"))
    assert add != sub  # Add/Sub are operator nodes, not leaf values


def test_ast_size_counts_nodes():
    assert parse_ast("x=1").size() == 4  # Module, Assign, Name, Constant
