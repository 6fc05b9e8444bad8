#pragma once

// Hand-built single-z instances that steer the pipeline into specific
// branches. In all of them G - z has no even A-cycle: every A-vertex sits on
// odd cycles only.

#include <vector>

#include "evenac/evenac.hpp"

namespace evenac::testkit {

struct Builder {
    int n = 0;
    EdgeList edges;
    VertexList a;
    std::optional<Vertex> z;

    Vertex add(bool in_a = false) {
        if (in_a) a.push_back(n);
        return n++;
    }
    void join(Vertex x, Vertex y) { edges.emplace_back(x, y); }
    Vertex add_z() {
        z = add();
        return *z;
    }
    LabeledGraph graph() const { return LabeledGraph(n, edges, a, z); }
};

/// Odd cycle of length `len` with A on every second vertex among the first
/// `a_count * 2`, z joined to the vertex after each A-vertex.
inline LabeledGraph odd_cycle_with_z(int len, int a_count) {
    Builder b;
    for (int i = 0; i < len; ++i) b.add(i % 2 == 0 && i / 2 < a_count);
    for (int i = 0; i < len; ++i) b.join(i, (i + 1) % len);
    Vertex z = b.add_z();
    for (int i = 0; i < a_count; ++i) b.join(z, 2 * i + 1);
    return b.graph();
}

/// C9 with A = {0, 3, 6} and z joined to 1, 4, 7: three attached segments.
inline LabeledGraph c9_three_segments() {
    Builder b;
    for (int i = 0; i < 9; ++i) b.add(i % 3 == 0);
    for (int i = 0; i < 9; ++i) b.join(i, (i + 1) % 9);
    Vertex z = b.add_z();
    for (int i = 1; i < 9; i += 3) b.join(z, i);
    return b.graph();
}

/// A leaf triangle, `m` triangles (c_{i-1}, t_i, c_i) with t_i in A, and
/// another leaf triangle; z sees only the two leaf triangles, so the middle
/// triangles form a string attached to z by two edges at each end.
inline LabeledGraph triangle_string(int m) {
    Builder b;
    Vertex x0 = b.add(), y0 = b.add(), c = b.add();
    b.join(x0, y0);
    b.join(y0, c);
    b.join(x0, c);
    for (int i = 0; i < m; ++i) {
        Vertex t = b.add(true), c2 = b.add();
        b.join(c, t);
        b.join(t, c2);
        b.join(c, c2);
        c = c2;
    }
    Vertex x1 = b.add(), y1 = b.add();
    b.join(c, x1);
    b.join(x1, y1);
    b.join(c, y1);
    Vertex z = b.add_z();
    for (Vertex v : {x0, y0, x1, y1}) b.join(z, v);
    return b.graph();
}

/// Two triangle strings of length `m` separated by a middle triangle that
/// touches z.
inline LabeledGraph two_strings(int m) {
    Builder b;
    std::vector<Vertex> zn;
    Vertex x0 = b.add(), c = b.add();
    b.join(x0, c);
    Vertex y0 = b.add();
    b.join(x0, y0);
    b.join(y0, c);
    zn.push_back(x0);
    auto run = [&]() {
        for (int i = 0; i < m; ++i) {
            Vertex t = b.add(true), c2 = b.add();
            b.join(c, t);
            b.join(t, c2);
            b.join(c, c2);
            c = c2;
        }
    };
    run();
    Vertex mid = b.add(), c2 = b.add();
    b.join(c, mid);
    b.join(mid, c2);
    b.join(c, c2);
    zn.push_back(mid);
    c = c2;
    run();
    Vertex x1 = b.add(), y1 = b.add();
    b.join(c, x1);
    b.join(x1, y1);
    b.join(c, y1);
    zn.push_back(x1);
    Vertex z = b.add_z();
    for (Vertex v : zn) b.join(z, v);
    return b.graph();
}

/// String b0 - B1 - b1 - B2 - b2 where each B_i is `w` paths of length 3
/// plus one path of length 2 through an A-vertex; z reaches b0 and b2
/// through `w` pendant paths each, so no small edge cut exists.
inline LabeledGraph fat_string(int w) {
    Builder b;
    Vertex b0 = b.add(), b1 = b.add(), b2 = b.add();
    auto block = [&](Vertex s, Vertex t) {
        Vertex a = b.add(true);
        b.join(s, a);
        b.join(a, t);
        for (int i = 0; i < w; ++i) {
            Vertex x = b.add(), y = b.add();
            b.join(s, x);
            b.join(x, y);
            b.join(y, t);
        }
    };
    block(b0, b1);
    block(b1, b2);
    std::vector<Vertex> p0, p2;
    for (int i = 0; i < w; ++i) p0.push_back(b.add());
    for (int i = 0; i < w; ++i) p2.push_back(b.add());
    Vertex z = b.add_z();
    for (Vertex p : p0) {
        b.join(b0, p);
        b.join(p, z);
    }
    for (Vertex p : p2) {
        b.join(b2, p);
        b.join(p, z);
    }
    return b.graph();
}

/// Cutvertex c with `arms` triangles (c, p_i, q_i), q_i in A, p_i joined to z.
inline LabeledGraph triangle_star(int arms) {
    Builder b;
    Vertex c = b.add();
    std::vector<Vertex> ps;
    for (int i = 0; i < arms; ++i) {
        Vertex p = b.add(), q = b.add(true);
        b.join(c, p);
        b.join(p, q);
        b.join(c, q);
        ps.push_back(p);
    }
    Vertex z = b.add_z();
    for (Vertex p : ps) b.join(z, p);
    return b.graph();
}

/// Two claws: centres c1, c2 with three A-triangle arms each, joined by an
/// A-free triangle. The reduced tree has two disjoint three-leaf subtrees.
inline LabeledGraph two_claws() {
    Builder b;
    std::vector<Vertex> ps;
    auto claw = [&](Vertex c) {
        for (int i = 0; i < 3; ++i) {
            Vertex p = b.add(), q = b.add(true);
            b.join(c, p);
            b.join(p, q);
            b.join(c, q);
            ps.push_back(p);
        }
    };
    Vertex c1 = b.add(), c2 = b.add(), m = b.add();
    b.join(c1, m);
    b.join(m, c2);
    b.join(c1, c2);
    claw(c1);
    claw(c2);
    Vertex z = b.add_z();
    for (Vertex p : ps) b.join(z, p);
    return b.graph();
}

/// Chain of `m` triangles (c_{i-1}, t_i, c_i) with t_i in A and joined to z.
inline LabeledGraph triangle_chain(int m) {
    Builder b;
    Vertex c = b.add();
    std::vector<Vertex> ts;
    for (int i = 0; i < m; ++i) {
        Vertex t = b.add(true), c2 = b.add();
        b.join(c, t);
        b.join(t, c2);
        b.join(c, c2);
        ts.push_back(t);
        c = c2;
    }
    Vertex z = b.add_z();
    for (Vertex t : ts) b.join(z, t);
    return b.graph();
}

/// Wheel: rim C_n plus hub z, z in A.
inline LabeledGraph wheel_z_in_a(int rim) {
    Builder b;
    for (int i = 0; i < rim; ++i) b.add();
    for (int i = 0; i < rim; ++i) b.join(i, (i + 1) % rim);
    Vertex z = b.add_z();
    b.a.push_back(z);
    for (int i = 0; i < rim; ++i) b.join(z, i);
    return b.graph();
}

}  // namespace evenac::testkit
