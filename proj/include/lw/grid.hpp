#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace lw {

struct Vertex {
    int m = 0, n = 0;
    bool operator==(const Vertex&) const = default;
};

enum class Dir { horizontal, vertical };

// edge from base=(m,n) to (m+1,n) or (m,n+1)
struct Edge {
    Dir dir = Dir::horizontal;
    int m = 0, n = 0;
    Vertex from() const { return {m, n}; }
    Vertex to() const { return dir == Dir::horizontal ? Vertex{m + 1, n} : Vertex{m, n + 1}; }
    bool operator==(const Edge&) const = default;
};

struct Face {
    int m = 0, n = 0;
};

enum class Step { R, L, U, D };

std::string to_string(const Vertex& v);
std::string to_string(const Edge& e);
std::string to_string(const Face& f);

struct GridDomain {
    int m_max = 1, n_max = 1;

    GridDomain() = default;
    GridDomain(int mm, int nn) : m_max(mm), n_max(nn)
    {
        if (mm < 1 || nn < 1) throw std::invalid_argument("grid needs at least one face");
    }

    int vertex_count() const { return (m_max + 1) * (n_max + 1); }
    int face_count() const { return m_max * n_max; }
    int horizontal_count() const { return m_max * (n_max + 1); }
    int vertical_count() const { return (m_max + 1) * n_max; }
    int edge_count() const { return horizontal_count() + vertical_count(); }

    int index(int m, int n) const { return m + n * (m_max + 1); }
    int index(const Vertex& v) const { return index(v.m, v.n); }
    Vertex vertex(int idx) const { return {idx % (m_max + 1), idx / (m_max + 1)}; }

    bool contains(const Vertex& v) const { return v.m >= 0 && v.n >= 0 && v.m <= m_max && v.n <= n_max; }
    bool contains(const Face& f) const { return f.m >= 0 && f.n >= 0 && f.m < m_max && f.n < n_max; }
    bool contains(const Edge& e) const
    {
        return e.dir == Dir::horizontal ? (e.m >= 0 && e.m < m_max && e.n >= 0 && e.n <= n_max)
                                        : (e.m >= 0 && e.m <= m_max && e.n >= 0 && e.n < n_max);
    }

    int edge_index(const Edge& e) const
    {
        return e.dir == Dir::horizontal ? e.m + e.n * m_max : horizontal_count() + e.m + e.n * (m_max + 1);
    }

    // the edge joining two adjacent vertices, independent of their order
    Edge edge_between(const Vertex& a, const Vertex& b) const;

    std::array<Vertex, 4> face_quad(const Face& f, bool reversed = false) const;
    // edges ij, jk, kl, li of a face in canonical storage orientation
    std::array<Edge, 4> face_edges(const Face& f) const;

    std::vector<Face> faces() const;
    std::vector<Edge> edges() const;
    std::vector<Face> interior_faces(int trim) const;

    bool operator==(const GridDomain&) const = default;
};

std::array<std::vector<Step>, 2> lattice_paths(const Vertex& from, const Vertex& to);

template <typename T>
struct VertexField {
    GridDomain dom;
    std::vector<T> data;

    VertexField() = default;
    explicit VertexField(const GridDomain& d, const T& init = T()) : dom(d), data(d.vertex_count(), init) {}

    T& operator()(int m, int n) { return data[dom.index(m, n)]; }
    const T& operator()(int m, int n) const { return data[dom.index(m, n)]; }
    T& operator[](const Vertex& v) { return data[dom.index(v)]; }
    const T& operator[](const Vertex& v) const { return data[dom.index(v)]; }
    std::size_t size() const { return data.size(); }
};

// one value per unoriented edge; reading (ij) or (ji) hits the same slot
template <typename T>
struct EdgeField {
    GridDomain dom;
    std::vector<T> data;

    EdgeField() = default;
    explicit EdgeField(const GridDomain& d, const T& init = T()) : dom(d), data(d.edge_count(), init) {}

    T& operator[](const Edge& e) { return data[dom.edge_index(e)]; }
    const T& operator[](const Edge& e) const { return data[dom.edge_index(e)]; }
    T& operator()(const Vertex& a, const Vertex& b) { return (*this)[dom.edge_between(a, b)]; }
    const T& operator()(const Vertex& a, const Vertex& b) const { return (*this)[dom.edge_between(a, b)]; }
};

template <typename T>
struct FaceField {
    GridDomain dom;
    std::vector<T> data;

    FaceField() = default;
    explicit FaceField(const GridDomain& d, const T& init = T()) : dom(d), data(d.face_count(), init) {}

    T& operator[](const Face& f) { return data[f.m + f.n * dom.m_max]; }
    const T& operator[](const Face& f) const { return data[f.m + f.n * dom.m_max]; }
};

} // namespace lw
