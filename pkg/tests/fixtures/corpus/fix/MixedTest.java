package fix;

import org.junit.Test;

public class MixedTest {
    @Test
    public void testFirst() {
        Mixed mixed = new Mixed();
        mixed.first(1, "ab");
        assertEquals(3, mixed.a);
    }

    public void helper() {
        new Mixed().second(2);
    }
}
