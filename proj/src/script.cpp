#include "roofcheck/script.hpp"

#include <json.hpp>
#include <sstream>
#include <stdexcept>

namespace roofcheck {

namespace {

std::vector<std::string> tokens_of(const std::string& line) {
    std::string body = line.substr(0, line.find('#'));
    std::istringstream is(body);
    std::vector<std::string> out;
    std::string t;
    while (is >> t) out.push_back(t);
    return out;
}

void parse_pos(const std::string& t, int& a, int& b) {
    std::size_t comma = t.find(',');
    if (t.size() < 5 || t.front() != '(' || t.back() != ')' || comma == std::string::npos)
        throw std::invalid_argument("bad position token: " + t);
    a = std::stoi(t.substr(1, comma - 1));
    b = std::stoi(t.substr(comma + 1, t.size() - comma - 2));
}

std::string pos_token(int a, int b) {
    std::ostringstream os;
    os << "(" << a << "," << b << ")";
    return os.str();
}

SeqUse parse_seq_use(const std::string& t) {
    SeqUse u;
    std::string body = t;
    if (body.rfind("dual:", 0) == 0) {
        u.dual = true;
        body = body.substr(5);
    }
    std::size_t open = body.find('(');
    if (open == std::string::npos) throw std::invalid_argument("bad sequence citation: " + t);
    u.id = body.substr(0, open);
    int a = 0, b = 0;
    parse_pos(body.substr(open), a, b);
    u.a = a;
    u.b = b;
    return u;
}

std::string seq_use_token(const SeqUse& u) {
    std::string s = u.dual ? "dual:" + u.id : u.id;
    return s + pos_token(static_cast<int>(u.a), static_cast<int>(u.b));
}

ChessObject parse_object_line(const std::vector<std::string>& tk, std::size_t from,
                              ChessObject::Prov prov) {
    if (tk.size() != from + 3) throw std::invalid_argument("object line needs: id expr (c,r)");
    ChessObject o;
    o.id = tk[from];
    o.base = parse_expr(tk[from + 1]);
    parse_pos(tk[from + 2], o.col, o.row);
    o.prov = prov;
    return o;
}

// ids listed between brackets: [ a b c ]
std::vector<std::string> parse_bracket(const std::vector<std::string>& tk, std::size_t& i) {
    if (i >= tk.size() || tk[i] != "[") throw std::invalid_argument("expected [ id list ]");
    ++i;
    std::vector<std::string> out;
    while (i < tk.size() && tk[i] != "]") out.push_back(tk[i++]);
    if (i >= tk.size()) throw std::invalid_argument("unterminated id list");
    ++i;
    return out;
}

}  // namespace

Script parse_script(const std::string& text) {
    Script s;
    std::istringstream is(text);
    std::string line;
    enum class Sec { Header, Objects, Steps, Identify, Target } sec = Sec::Header;
    ScriptStep* ident = nullptr;
    auto prov = [&s] {
        return s.cayley ? ChessObject::Prov::Pullback : ChessObject::Prov::Pushforward;
    };
    while (std::getline(is, line)) {
        auto tk = tokens_of(line);
        if (tk.empty()) continue;
        switch (sec) {
            case Sec::Header:
                if (tk[0] == "script" && tk.size() >= 2) {
                    s.name = tk[1];
                } else if (tk[0] == "mode" && tk.size() == 2) {
                    if (tk[1] == "cayley")
                        s.cayley = true;
                    else if (tk[1] == "blowup")
                        s.cayley = false;
                    else
                        throw std::invalid_argument("mode must be blowup or cayley");
                } else if (tk[0] == "serre-offset" && tk.size() == 2) {
                    parse_pos(tk[1], s.serre_offset.first, s.serre_offset.second);
                } else if (tk[0] == "objects") {
                    sec = Sec::Objects;
                } else {
                    throw std::invalid_argument("unexpected header line: " + line);
                }
                break;
            case Sec::Objects:
                if (tk[0] == "end") {
                    sec = Sec::Steps;
                    break;
                }
                s.objects.push_back(parse_object_line(tk, 0, prov()));
                break;
            case Sec::Steps: {
                if (tk[0] == "target") {
                    sec = Sec::Target;
                    break;
                }
                if (tk[0] != "step" || tk.size() < 3)
                    throw std::invalid_argument("expected step line: " + line);
                ScriptStep st;
                st.label = tk[1];
                st.op = tk[2];
                std::size_t i = 3;
                if (st.op == "serre") {
                    if (i >= tk.size()) throw std::invalid_argument("serre needs direction");
                    st.flag = tk[i] == "to-start";
                    if (!st.flag && tk[i] != "to-end")
                        throw std::invalid_argument("serre direction must be to-start/to-end");
                    ++i;
                    while (i < tk.size()) st.idsA.push_back(tk[i++]);
                } else if (st.op == "exchange" || st.op == "orthogonal") {
                    st.idsA = parse_bracket(tk, i);
                    st.idsB = parse_bracket(tk, i);
                    if (st.op == "orthogonal") {
                        if (i >= tk.size() || (tk[i] != "both" && tk[i] != "backward"))
                            throw std::invalid_argument("orthogonal needs both|backward");
                        st.flag = tk[i] == "both";
                        ++i;
                    }
                } else if (st.op == "insert") {
                    if (tk.size() != 6) throw std::invalid_argument("insert <id> before|after <anchor>");
                    st.id = tk[3];
                    if (tk[4] == "before")
                        st.flag = true;
                    else if (tk[4] == "after")
                        st.flag = false;
                    else
                        throw std::invalid_argument("insert direction must be before/after");
                    st.anchor = tk[5];
                } else if (st.op == "mutate-left" || st.op == "mutate-right") {
                    st.id = tk[i++];
                    if (i >= tk.size() || tk[i] != "through")
                        throw std::invalid_argument("mutate needs through [ ids ]");
                    ++i;
                    st.idsA = parse_bracket(tk, i);
                    if (i + 2 >= tk.size() || tk[i] != "claim")
                        throw std::invalid_argument("mutate needs claim <expr> (c,r)");
                    st.claim = parse_expr(tk[i + 1]);
                    parse_pos(tk[i + 2], st.cc, st.cr);
                    i += 3;
                } else if (st.op == "rewrite") {
                    st.id = tk[i++];
                    if (i + 2 >= tk.size() || tk[i] != "claim")
                        throw std::invalid_argument("rewrite needs claim <expr> (c,r)");
                    st.claim = parse_expr(tk[i + 1]);
                    parse_pos(tk[i + 2], st.cc, st.cr);
                    i += 3;
                    if (i < tk.size() && (tk[i] == "before" || tk[i] == "after")) {
                        st.place.kind = tk[i] == "before" ? Placement::Kind::Before
                                                         : Placement::Kind::After;
                        st.place.anchor = tk[i + 1];
                        i += 2;
                    } else if (i < tk.size() && tk[i] == "stay") {
                        ++i;
                    }
                    if (i >= tk.size() || tk[i] != "via")
                        throw std::invalid_argument("rewrite needs via <sequence citations>");
                    ++i;
                    while (i < tk.size()) st.cites.push_back(parse_seq_use(tk[i++]));
                    if (st.cites.empty()) throw std::invalid_argument("rewrite cites nothing");
                } else if (st.op == "identify") {
                    s.steps.push_back(st);
                    ident = &s.steps.back();
                    sec = Sec::Identify;
                    break;
                } else {
                    throw std::invalid_argument("unknown step op: " + st.op);
                }
                if (st.op != "identify") s.steps.push_back(st);
                break;
            }
            case Sec::Identify:
                if (tk[0] == "end") {
                    sec = Sec::Steps;
                    ident = nullptr;
                    break;
                }
                if (tk[0] == "ref") {
                    ident->reference.push_back(parse_object_line(tk, 1, prov()));
                } else if (tk[0] == "move" && tk.size() >= 3) {
                    SerreMove mv;
                    mv.to_start = tk[1] == "to-start";
                    if (!mv.to_start && tk[1] != "to-end")
                        throw std::invalid_argument("move direction must be to-start/to-end");
                    for (std::size_t k = 2; k < tk.size(); ++k) mv.ids.push_back(tk[k]);
                    ident->moves.push_back(mv);
                } else {
                    throw std::invalid_argument("unexpected identify line: " + line);
                }
                break;
            case Sec::Target:
                if (tk[0] == "end") {
                    sec = Sec::Steps;
                    break;
                }
                s.target.push_back(parse_object_line(tk, 0, prov()));
                break;
        }
    }
    if (sec == Sec::Objects || sec == Sec::Identify)
        throw std::invalid_argument("unterminated section");
    return s;
}

std::string print_script(const Script& s) {
    std::ostringstream os;
    os << "script " << s.name << "\n";
    os << "mode " << (s.cayley ? "cayley" : "blowup") << "\n";
    os << "serre-offset " << pos_token(s.serre_offset.first, s.serre_offset.second) << "\n";
    os << "objects\n";
    for (const auto& o : s.objects)
        os << "  " << o.id << " " << print_expr(o.base) << " " << pos_token(o.col, o.row) << "\n";
    os << "end\n";
    auto bracket = [&os](const std::vector<std::string>& ids) {
        os << "[ ";
        for (const auto& x : ids) os << x << " ";
        os << "]";
    };
    for (const auto& st : s.steps) {
        os << "step " << st.label << " " << st.op;
        if (st.op == "serre") {
            os << (st.flag ? " to-start" : " to-end");
            for (const auto& x : st.idsA) os << " " << x;
            os << "\n";
        } else if (st.op == "exchange" || st.op == "orthogonal") {
            os << " ";
            bracket(st.idsA);
            os << " ";
            bracket(st.idsB);
            if (st.op == "orthogonal") os << (st.flag ? " both" : " backward");
            os << "\n";
        } else if (st.op == "insert") {
            os << " " << st.id << (st.flag ? " before " : " after ") << st.anchor << "\n";
        } else if (st.op == "mutate-left" || st.op == "mutate-right") {
            os << " " << st.id << " through ";
            bracket(st.idsA);
            os << " claim " << print_expr(st.claim) << " " << pos_token(st.cc, st.cr) << "\n";
        } else if (st.op == "rewrite") {
            os << " " << st.id << " claim " << print_expr(st.claim) << " "
               << pos_token(st.cc, st.cr);
            if (st.place.kind == Placement::Kind::Before)
                os << " before " << st.place.anchor;
            else if (st.place.kind == Placement::Kind::After)
                os << " after " << st.place.anchor;
            else
                os << " stay";
            os << " via";
            for (const auto& u : st.cites) os << " " << seq_use_token(u);
            os << "\n";
        } else if (st.op == "identify") {
            os << "\n";
            for (const auto& o : st.reference)
                os << "  ref " << o.id << " " << print_expr(o.base) << " "
                   << pos_token(o.col, o.row) << "\n";
            for (const auto& mv : st.moves) {
                os << "  move " << (mv.to_start ? "to-start" : "to-end");
                for (const auto& x : mv.ids) os << " " << x;
                os << "\n";
            }
            os << "end\n";
        }
    }
    os << "target\n";
    for (const auto& o : s.target)
        os << "  " << o.id << " " << print_expr(o.base) << " " << pos_token(o.col, o.row) << "\n";
    os << "end\n";
    return os.str();
}

Report run_script(const Script& s) {
    Report rep;
    rep.script = s.name;
    rep.mode = s.cayley ? "cayley" : "blowup";
    Collection c;
    c.objects = s.objects;
    rep.objects = static_cast<int>(c.objects.size());
    if (c.objects.size() != 64) {
        rep.final_notes.push_back("collection must hold 64 objects (4 copies of 16), got " +
                                  std::to_string(c.objects.size()));
        return rep;
    }
    for (std::size_t i = 0; i < c.objects.size(); ++i)
        for (std::size_t j = i + 1; j < c.objects.size(); ++j)
            if (c.objects[i].id == c.objects[j].id) {
                rep.final_notes.push_back("duplicate object id " + c.objects[i].id);
                return rep;
            }

    std::vector<KClass> baseline = kclasses_of(c);
    bool aborted = false;
    for (const auto& st : s.steps) {
        Certificate cert;
        if (st.op == "serre") {
            cert = do_serre(c, st.idsA, st.flag, s.serre_offset, st.label);
        } else if (st.op == "exchange") {
            cert = do_exchange(c, st.idsA, st.idsB, st.label);
        } else if (st.op == "orthogonal") {
            cert = check_orthogonal(c, st.idsA, st.idsB, st.flag, st.label);
        } else if (st.op == "insert") {
            cert = do_insert(c, st.id, st.anchor, st.flag, st.label);
        } else if (st.op == "mutate-left" || st.op == "mutate-right") {
            cert = do_mutate(c, st.op == "mutate-left", st.id, st.idsA, st.claim, st.cc, st.cr,
                             st.label);
        } else if (st.op == "rewrite") {
            cert = do_rewrite(c, st.id, st.claim, st.cc, st.cr, st.place, st.cites, st.label);
        } else if (st.op == "identify") {
            cert = do_identify(c, st.reference, st.moves, s.serre_offset, st.label);
        }
        if (cert.pass && c.objects.size() != 64) {
            cert.pass = false;
            cert.notes.push_back("object count left 64");
        }
        if (cert.pass) {
            std::vector<KClass> now = kclasses_of(c);
            if (st.op == "serre") {
                baseline = std::move(now);
                cert.notes.push_back("K-class lattice re-based after the Serre twist");
            } else if (same_lattice(baseline, now)) {
                cert.lattice_ok = true;
            } else {
                cert.lattice_ok = false;
                cert.pass = false;
                cert.notes.push_back("K-class lattice of the collection changed");
            }
        }
        bool failed = !cert.pass;
        rep.steps.push_back(std::move(cert));
        if (failed) {
            aborted = true;
            rep.final_notes.push_back("replay aborted at step " + st.label);
            break;
        }
    }

    if (!aborted) {
        if (s.target.empty()) {
            rep.final_notes.push_back("script declares no target layout");
        } else if (s.target.size() != c.objects.size()) {
            rep.final_notes.push_back("target declares " + std::to_string(s.target.size()) +
                                      " objects, collection holds " +
                                      std::to_string(c.objects.size()));
        } else {
            rep.target_ok = true;
            for (std::size_t i = 0; i < s.target.size(); ++i) {
                const ChessObject& got = c.objects[i];
                const ChessObject& want = s.target[i];
                if (got.id != want.id || !expr_equal(got.base, want.base) ||
                    got.col != want.col || got.row != want.row) {
                    rep.target_ok = false;
                    rep.final_notes.push_back("slot " + std::to_string(i) + ": have " +
                                              show(got) + ", target " + show(want));
                    if (rep.final_notes.size() > 6) break;
                }
            }
            if (rep.target_ok)
                rep.final_notes.push_back(
                    "final collection matches the declared target object by object");
        }
    }
    rep.lattice_rank = lattice_rank(kclasses_of(c));
    bool steps_ok = true;
    for (const auto& cert : rep.steps) steps_ok = steps_ok && cert.pass;
    rep.pass = steps_ok && !aborted && rep.target_ok;
    return rep;
}

std::string report_text(const Report& r) {
    std::ostringstream os;
    os << "script: " << r.script << "\n";
    os << "mode: " << r.mode << "\n";
    os << "objects: " << r.objects << "\n";
    for (const auto& c : r.steps) {
        os << "step " << c.step << " [" << c.kind << "] " << (c.pass ? "pass" : "FAIL");
        int zero = 0;
        for (const auto& p : c.pairs)
            if (p[2] == "certified-zero" || p[2] == "derived-zero") ++zero;
        if (!c.pairs.empty())
            os << " (" << zero << "/" << c.pairs.size() << " pairs vanish)";
        os << "\n";
        if (!c.pass) {
            for (const auto& p : c.pairs)
                if (p[2] != "certified-zero" && p[2] != "derived-zero")
                    os << "  pair " << p[0] << " -> " << p[1] << ": " << p[2] << "\n";
            for (const auto& n : c.notes) os << "  note: " << n << "\n";
            if (!c.kclass_delta.empty()) os << "  kclass delta: " << c.kclass_delta << "\n";
            if (!c.lattice_ok) os << "  lattice: changed\n";
        }
    }
    os << "target: " << (r.target_ok ? "matched" : "NOT matched") << "\n";
    for (const auto& n : r.final_notes) os << "  " << n << "\n";
    os << "lattice rank: " << r.lattice_rank << "\n";
    os << "result: " << (r.pass ? "pass" : "fail") << "\n";
    return os.str();
}

std::string report_json(const Report& r) {
    nlohmann::ordered_json j;
    j["script"] = r.script;
    j["mode"] = r.mode;
    j["objects"] = r.objects;
    j["steps"] = nlohmann::ordered_json::array();
    for (const auto& c : r.steps) {
        nlohmann::ordered_json js;
        js["step"] = c.step;
        js["kind"] = c.kind;
        js["pairs"] = nlohmann::ordered_json::array();
        for (const auto& p : c.pairs) js["pairs"].push_back({p[0], p[1], p[2]});
        js["verdicts"] = c.notes;
        js["kclass_delta"] = c.kclass_delta;
        js["status"] = c.pass ? "pass" : "fail";
        j["steps"].push_back(std::move(js));
    }
    j["final"] = {{"target", r.target_ok ? "matched" : "not-matched"},
                  {"notes", r.final_notes},
                  {"lattice_rank", r.lattice_rank}};
    j["status"] = r.pass ? "pass" : "fail";
    return j.dump(2) + "\n";
}

}  // namespace roofcheck
