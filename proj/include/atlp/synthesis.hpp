#pragma once

#include <string>
#include <vector>

#include "atlp/cgm.hpp"
#include "atlp/tableau.hpp"

namespace atlp {

// Tree over tableau states; node 0 is the root. Each non-root node records
// the Moves cell (index into Tableau::cells of its parent) and the profiles
// labelling the edge into it.
struct TabTree {
    struct Node {
        int state = -1;
        int parent = -1;
        int cell = -1;
        std::vector<int> profiles;
        std::vector<int> kids;
    };
    std::vector<Node> nodes;
};

TabTree simple_tree(const Tableau& t, int s);
TabTree witness_tree(const Tableau& t, F xi, int s);
TabTree realizing_tree(const Tableau& t, F xi, int s);

struct HintikkaStructure {
    struct Node {
        std::vector<F> label;      // sorted by CanonLess
        std::vector<int> actions;  // per agent
        std::vector<int> out;      // profile index -> node
        int origin = -1;           // tableau state, -1 if unknown
    };
    int agents = 1;
    std::vector<Node> nodes;
    int root = 0;
};

// Step 4 redirection. Paper: any present component of the state, lowest
// row first. Cyclic: only the component of the next queue row. Auto: Paper,
// falling back to Cyclic when the result is not a Hintikka structure.
enum class Closing { Paper, Cyclic, Auto };

HintikkaStructure assemble(Tableau& t, Closing mode = Closing::Auto);

// Row order used by assemble: first occurrence over the alive states.
std::vector<F> grid_rows(const Tableau& t);

CGM extract_cgm(const HintikkaStructure& h, const Store& st, bool keep_formulas = false);

// Rebuild a structure from a CGM whose states carry "formulas". Texts are
// resolved against known (e.g. a closure) before being parsed.
HintikkaStructure hintikka_from_cgm(Store& st, const CGM& m, const std::vector<F>& known = {});

struct HintikkaReport {
    bool ok = true;
    std::string condition;  // "H1".."H6"
    int node = -1;
    std::string message;
};

HintikkaReport validate_hintikka(const HintikkaStructure& h, Decomposer& d);

// Profiles of an action box grouped by the choice of the coalition.
std::vector<std::vector<int>> coalition_groups(const std::vector<int>& actions, Coalition coal);

}  // namespace atlp
