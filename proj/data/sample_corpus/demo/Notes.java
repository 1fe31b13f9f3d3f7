package demo.app;

/* Small StringBuilder round trip used by the samples. */
class Notes {
    String describe(String name, int count) {
        StringBuilder sb = new StringBuilder();
        sb.append(name);
        sb.append(count);
        return sb.toString();
    }
}
