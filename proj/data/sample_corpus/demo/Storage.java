package demo.app;

import org.hibernate.Session;
import org.hibernate.Transaction;
import com.thoughtworks.xstream.XStream;

class Storage {
    void persist(Session session, Object entity) {
        Transaction tx = session.beginTransaction();
        session.save(entity);
        tx.commit();
    }

    String export(XStream xstream, Object value) {
        return xstream.toXML(value);
    }
}
