#pragma once
// Table assembly from tape-navigation macros.
//
// Macros are written in continuation style: each takes the state in which it
// starts and returns the state it ends in (a fresh state with no rules yet).
// Unless stated otherwise a macro starts and ends with the head at the root
// of component 0 of the current frame. States can be identified with merge,
// which is how branches rejoin.
//
// Walker components hold a breadcrumb path from their root to a cursor; the
// cursor addresses the same path in the data components. Walker marks:
//   1 path cell      2 cursor        3 root, anchor    4 root, anchor, cursor
//   1* anchor        2* anchor, cursor                 *  root above the anchor

#include <array>
#include <bitset>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

#include "setm/machine.hpp"

namespace setm::tasm {

using S = std::uint32_t;
using MarkSet = std::bitset<kNumMarks>;

MarkSet marks(std::initializer_list<Mark> ms);
MarkSet nonzero_marks();

class Assembler {
public:
    Assembler();

    S fresh();
    S halt() const noexcept { return 0; }
    void rule(S s, Mark read, Mark write, Move mv, S next);
    void merge(S a, S b);
    S join(std::initializer_list<S> ss);
    S find(S s);

    // Embeds a finished table relocated up by `offset` components.
    void embed(const MachineTable& m, S entry, S exit, int offset = 0);
    MachineTable finish(S start);

    // ---- elementary steps ----------------------------------------------
    S step(S in, Move mv);                    // every mark kept
    S write(S in, Mark m, Move mv = Move::s);  // every mark overwritten
    // one exit per class; marks outside every class have no rule
    std::vector<S> read(S in, const std::vector<MarkSet>& classes, Move mv = Move::s);
    // reads, writes f(read) and branches by class
    std::vector<S> rewrite(S in, const std::vector<MarkSet>& classes,
                           const std::function<Mark(Mark)>& f, Move mv = Move::s);
    S jump(S in, int from, int to);
    S crash();  // a state with no rules

    // ---- components ----------------------------------------------------
    S erase_comp(S in, int c);                // direct erase, no scratch
    S write_code0(S in, int c);               // blank component c := code of 0
    S write_boolean(S in, int c, bool value);
    // exact same-path copy of src into blank dst
    S copy_comp(S in, int src, int dst, int scratch);
    S move_comp(S in, int src, int dst, int scratch);
    // one exit each for: (c,[0]) blank, (c,[0]) nonzero
    std::pair<S, S> test_first_child(S in, int c);

    // ---- walkers -------------------------------------------------------
    S w_init(S in, int w);                     // home -> home, cursor = root
    S to_cursor(S in, int from, int w);         // root of `from` -> (w, cursor)
    S to_root(S in, int w, int target);         // (w, cursor) -> root of target
    S hop(S in, int w1, int w2) { return to_cursor(to_root(in, w1, w2), w2, w2); }
    // the following start and end at (w, cursor)
    S w_down(S in);
    S w_next(S in);
    S w_up(S in);
    std::pair<S, S> w_is_anchor(S in);          // (yes, no)
    S w_reset(S in);                           // climb to the anchor
    S w_anchor_here(S in);                     // cursor becomes the anchor
    S w_copy(S in, int w, int w2);             // blank w2 := w
    S w_clear(S in, int w, int home);          // (w, cursor) -> root of home, w blank

    // at (w, p): inspect / modify (d, p) and return to (w, p)
    std::vector<S> peek(S in, int w, int d, const std::vector<MarkSet>& classes);
    std::vector<S> peek_rewrite(S in, int w, int d, const std::vector<MarkSet>& classes,
                                const std::function<Mark(Mark)>& f);
    S poke(S in, int w, int d, Mark m);

    // ---- traversals ----------------------------------------------------
    using Hook = std::function<S(S)>;  // at (w, cursor) -> (w, cursor)
    struct WalkPorts {
        S start;  // home, cursor at the anchor
        S after;  // (w, cursor): continue after the cursor's subtree
        S exit;   // home, cursor back at the anchor
    };
    // Preorder/postorder traversal of the subtree of d below w's anchor.
    WalkPorts walk(int w, int d, MarkSet nodes, const Hook& enter, const Hook& leave_leaf,
                   const Hook& leave_inner);
    S run_walk(S in, int w, int d, MarkSet nodes, const Hook& enter, const Hook& leave_leaf,
               const Hook& leave_inner);

    // Copies from (s below sw's cursor) to (d below dw's cursor) in lockstep,
    // writing map[mark]; map 0 treats a source cell as blank. Stops when
    // either walker climbs back to its anchor. Home -> home.
    S lockstep_copy(S in, int sw, int s, int dw, int d, const std::array<Mark, kNumMarks>& map);
    // Literal equality of the subtrees at the two walkers' anchors (cursors
    // start there and end there). Home -> (equal, different), both at home.
    std::pair<S, S> lockstep_equal(S in, int wa, int a, int wb, int b);
    // Literal equality of the subtrees at the two cursors, using scratch
    // walkers from `scratch`. Home -> (equal, different).
    std::pair<S, S> subtree_equal(S in, int wa, int a, int wb, int b, int scratch);
    // Every child of the node at wa's cursor is literally equal to some child
    // of the node at wb's cursor. Home -> (true, false).
    std::pair<S, S> forall_exists(S in, int wa, int a, int wb, int b, int scratch);
    // Some child of wb's cursor node is literally equal to the node at wa's
    // cursor. Home -> (true, false).
    std::pair<S, S> exists_equal(S in, int wa, int a, int wb, int b, int scratch);
    // Zero every cell strictly below w's cursor in d.
    S erase_below(S in, int w, int d, int scratch);
    // Implant a copy of component src at the blank slot at dw's cursor.
    S implant_comp(S in, int src, int dw, int d, int scratch, Mark as = Mark::m1);
    // Implant a copy of the subtree at sw's cursor at the blank slot at dw's cursor.
    S implant_subtree(S in, int sw, int s, int dw, int d, int scratch, Mark as = Mark::m1);
    // Move dw's cursor to the first blank child of its current node.
    S to_first_blank_child(S in, int dw, int d);

    static std::array<Mark, kNumMarks> identity_map();
    static std::array<Mark, kNumMarks> const_map(Mark m);

private:
    struct Raw {
        bool defined = false;
        Mark write = Mark::m0;
        Move move = Move::s;
        S next = 0;
    };
    std::vector<std::array<Raw, kNumMarks>> rules_;
    std::vector<S> parent_;
};

}  // namespace setm::tasm
