#pragma once

#include <string>
#include <utility>
#include <vector>

#include "roofcheck/chessboard.hpp"

namespace roofcheck {

// One scripted step. op selects the engine operation; unused fields stay
// empty. serre uses idsA with flag = to-start; insert uses id/anchor with
// flag = before; orthogonal uses idsA/idsB with flag = both-directions.
struct ScriptStep {
    std::string label;
    std::string op;  // serre | exchange | insert | mutate-left | mutate-right |
                     // rewrite | orthogonal | identify
    std::vector<std::string> idsA;
    std::vector<std::string> idsB;
    bool flag = false;
    std::string id;
    std::string anchor;
    ExprPtr claim;
    int cc = 0;
    int cr = 0;
    Placement place;
    std::vector<SeqUse> cites;
    std::vector<ChessObject> reference;
    std::vector<SerreMove> moves;
};

struct Script {
    std::string name;
    bool cayley = false;  // pullback provenance, divisor model otherwise
    std::pair<int, int> serre_offset{-4, -4};
    std::vector<ChessObject> objects;
    std::vector<ScriptStep> steps;
    std::vector<ChessObject> target;
};

Script parse_script(const std::string& text);
std::string print_script(const Script& s);

struct Report {
    std::string script;
    std::string mode;
    std::vector<Certificate> steps;
    bool target_ok = false;
    std::vector<std::string> final_notes;
    int objects = 0;
    int lattice_rank = 0;
    bool pass = false;
};

Report run_script(const Script& s);

std::string report_text(const Report& r);
std::string report_json(const Report& r);

}  // namespace roofcheck
