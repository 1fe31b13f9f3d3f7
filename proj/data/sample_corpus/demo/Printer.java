package demo.app;

class Printer {
    void sum(int a, int b) {
        System.out.println(a + b);
    }

    int clamp(int x) {
        return Math.abs(x);
    }
}
